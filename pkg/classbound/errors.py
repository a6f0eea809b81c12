"""
Exception hierarchy for classbound.

Input errors also derive from ValueError; limits and search failures also
derive from RuntimeError.
"""


class ClassboundError(Exception):
    """Base class for all classbound errors."""


class CapExceeded(ClassboundError, RuntimeError):
    """An enumeration grew past the configured cap."""


class SearchFailed(ClassboundError, RuntimeError):
    """A deterministic seeded search ran out of candidates."""


class ModeDowngraded(ClassboundError, RuntimeError):
    """An exhaustive check had to fall back to sampling."""


class ClassMismatch(ClassboundError, RuntimeError):
    """Two independent class computations disagree."""


class ElementNotInGroup(ClassboundError, ValueError):
    """A permutation is not a member of the group it was looked up in."""


class NotASubgroup(ClassboundError, ValueError):
    """A member set is not closed, or lives in a different parent group."""


class NotNormal(ClassboundError, ValueError):
    """A subgroup is not normal where normality is required."""


class NotInvariant(ClassboundError, ValueError):
    """An element does not normalize the subgroup it should act on."""


class NotTransitive(ClassboundError, ValueError):
    """An element does not permute the factors transitively."""


class ExcludedDegree(ClassboundError, ValueError):
    """The bound does not apply at this degree."""


class NotAbelian(ClassboundError, ValueError):
    """An abelian group was required."""


class SingularGenerator(ClassboundError, ValueError):
    """A matrix generator has zero determinant."""


class HypothesisFailed(ClassboundError, ValueError):
    """A lemma's hypothesis does not hold, so the lemma is not applicable."""
