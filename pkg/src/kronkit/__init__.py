"""Rigorous arithmetic toolkit for quantitative inhomogeneous
Diophantine approximation: explicit bounds, complete box enumeration,
exact witness search, and finite transference checks."""

from .scalar import Q, Real, Scalar, dist_to_nearest_int, nearest_int

__version__ = "0.1.0"

__all__ = ["Q", "Real", "Scalar", "dist_to_nearest_int", "nearest_int",
           "__version__"]
