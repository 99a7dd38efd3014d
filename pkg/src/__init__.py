"""grwtails - desk-scale numerical laboratory for GRW collapse tails."""

__version__ = "0.1.0"
