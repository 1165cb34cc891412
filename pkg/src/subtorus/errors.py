"""Exception hierarchy.

Every error raised for bad input derives from :class:`SubtorusError` (a
``ValueError``), so callers and the CLI can separate malformed requests from
:class:`InvariantViolation`, which signals a bug.
"""


class SubtorusError(ValueError):
    """Base class for input/contract errors."""


class ShapeError(SubtorusError):
    """Matrix or vector dimensions do not fit together."""


class AmbientMismatch(SubtorusError):
    """Two lattices live in different ambient ranks."""


class ParentMismatch(SubtorusError):
    """Objects belong to different finitely generated abelian groups."""


class NotPrimitive(SubtorusError):
    """A primitive (saturated) lattice was required."""


class HypothesisViolated(SubtorusError):
    """The inputs do not satisfy the hypotheses of the requested computation."""


class TorsionParentError(SubtorusError):
    """The operation is only defined over a torsion-free group Z^r."""


class NonTorsionError(SubtorusError):
    """A translation factor is not a torsion point with exact rational exponents."""


class InvariantViolation(RuntimeError):
    """Two independent computations disagreed; this is a bug, not bad input."""
