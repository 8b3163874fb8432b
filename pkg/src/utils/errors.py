"""
Exception hierarchy for the skew quadric toolkit.

Every failure the library raises derives from ``SkewQuadricError``; input
validation failures also derive from ``ValueError``.
"""


class SkewQuadricError(Exception):
    """Base class for library errors."""


class MalformedInput(SkewQuadricError, ValueError):
    """A JSON / text payload could not be decoded."""


class IndexOutOfRange(SkewQuadricError, ValueError):
    """A variable or vertex index lies outside 1..n."""


class ContextMismatch(SkewQuadricError, ValueError):
    """Operands live over different sign systems (or different quadrics)."""


class ShapeMismatch(SkewQuadricError, ValueError):
    """Matrix or vector dimensions do not agree."""


class RelationViolation(SkewQuadricError, ValueError):
    """A substitution does not define an algebra endomorphism of S_eps."""


class NotCentral(SkewQuadricError, ValueError):
    """The designated quadric is not central, or is moved by an automorphism."""


class NotReduced(SkewQuadricError, ValueError):
    """A matrix factorization still contains a nonzero scalar entry."""


class MorphismViolation(SkewQuadricError, ValueError):
    """A pair (mu0, mu1) does not commute with the factorizations."""


class NoIsolatedVertex(SkewQuadricError, ValueError):
    """Relative mutation requested without an isolated third vertex."""


class CapExceeded(SkewQuadricError, ValueError):
    """A brute-force oracle was asked for a size above its cap."""


class UnsupportedSize(SkewQuadricError, ValueError):
    """n lies outside the range an enumeration supports."""
