"""Scenario configuration loading."""

from .loader import ConfigurationLoader, parse_config

__all__ = ["ConfigurationLoader", "parse_config"]
