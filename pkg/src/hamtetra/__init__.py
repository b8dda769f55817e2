"""Hamiltonian tetrahedralizations with few Steiner points."""

__version__ = "0.1.0"
