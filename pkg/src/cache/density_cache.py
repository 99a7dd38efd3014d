"""In-memory LRU cache of collapse-centre CDFs.

grw_hit on many fresh copies of the same state recomputes the same smeared
density each time; entries are keyed by a digest of the amplitudes, the grid
and the kernel width, so any change to the state is a miss.
"""

import hashlib
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..models import WaveFunction

DEFAULT_MAX_ENTRIES = 64


@dataclass(frozen=True, slots=True, eq=False)
class DensityCacheEntry:
    """Bin edges and CDF of the smeared density for one (state, a) pair."""

    key: str
    edges: np.ndarray
    cdf: np.ndarray


class CenterDensityCache:
    """Thread-safe LRU cache of collapse-centre CDFs."""

    def __init__(self, max_entries: int = DEFAULT_MAX_ENTRIES):
        """
        Initialize the cache.

        Args:
            max_entries: Entries kept before the least recently used is evicted.
        """
        self.max_entries = max_entries
        self._entries: "OrderedDict[str, DensityCacheEntry]" = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    @staticmethod
    def make_key(wf: WaveFunction, a: float) -> str:
        digest = hashlib.sha256()
        digest.update(wf.amplitudes.tobytes())
        grid = wf.grid
        digest.update(repr((grid.x_min, grid.x_max, grid.n_points, a)).encode())
        return digest.hexdigest()

    def get(self, wf: WaveFunction, a: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        key = self.make_key(wf, a)
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                self._misses += 1
                return None
            self._entries.move_to_end(key)
            self._hits += 1
            return entry.edges, entry.cdf

    def set(self, wf: WaveFunction, a: float, edges: np.ndarray, cdf: np.ndarray) -> None:
        key = self.make_key(wf, a)
        edges = edges.copy()
        cdf = cdf.copy()
        edges.setflags(write=False)
        cdf.setflags(write=False)
        with self._lock:
            self._entries[key] = DensityCacheEntry(key, edges, cdf)
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                self._entries.popitem(last=False)

    def invalidate(self) -> int:
        """Drop every entry; returns how many were removed."""
        with self._lock:
            count = len(self._entries)
            self._entries.clear()
            return count

    def get_stats(self) -> Dict[str, int]:
        with self._lock:
            return {
                "entries": len(self._entries),
                "hits": self._hits,
                "misses": self._misses,
                "max_entries": self.max_entries,
            }


_cache: Optional[CenterDensityCache] = None


def get_density_cache() -> CenterDensityCache:
    """Get or create the process-wide cache."""
    global _cache
    if _cache is None:
        _cache = CenterDensityCache()
    return _cache
