"""Cache module for repeated collapse-centre sampling."""

from .density_cache import CenterDensityCache, DensityCacheEntry, get_density_cache

__all__ = ["CenterDensityCache", "DensityCacheEntry", "get_density_cache"]
