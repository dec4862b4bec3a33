"""Kronecker coefficients with two-row lambda by exact lattice-point counting
in diamond-quiver cones, cross-checked against classical symmetric-function
oracles."""

__version__ = "0.1.0"
