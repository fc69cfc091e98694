"""Reconstruction of manifolds and Lipschitz maps from finite random samples."""

__version__ = "0.3.0"
