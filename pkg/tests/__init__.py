"""Test package for grwtails."""
