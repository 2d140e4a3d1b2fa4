"""Verification lab for pentagon, tetrahedral and lattice-evolution maps."""

__version__ = "0.1.0"
