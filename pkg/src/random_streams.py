"""
Seeded random streams.

Every random draw in the package goes through a numpy Generator passed in
explicitly. Ensembles derive one independent stream per repetition from
(root seed, repetition index) alone, so the assignment of repetitions to
worker threads never changes a result.
"""

import numpy as np
from numpy.random import SeedSequence

from .errors import ValidationError

SEED_BITS = 64


def normalize_seed(seed: int) -> int:
    """Map any integer onto the unsigned 64-bit range used in reports."""
    return int(seed) % (1 << SEED_BITS)


def root_generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(SeedSequence(normalize_seed(seed)))


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for repetition `index` under root `seed`."""
    if index < 0:
        raise ValidationError(f"repetition index must be non-negative (got {index})")
    return np.random.default_rng(SeedSequence([normalize_seed(seed), index]))
