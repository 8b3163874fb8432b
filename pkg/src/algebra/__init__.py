"""
Sub-package with the exact algebra: skew polynomials, Hilbert series and
matrix factorizations.
Import the public classes here for convenience.
"""
from .skewpoly import SignSystem, SkewPoly, LinearSubstitution  # noqa: F401
from .mf import MatrixFactorization, MFMorphism  # noqa: F401
