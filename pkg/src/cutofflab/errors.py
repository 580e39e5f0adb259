"""Exception types shared across the package."""

from __future__ import annotations


class CutoffLabError(Exception):
    """Base class for all package-specific errors."""


class UnknownFamily(CutoffLabError):
    """The requested family name is not in the catalog."""


class InvalidRank(CutoffLabError):
    """Rank parameters outside the family's validity range."""


class WeightKindMismatch(CutoffLabError):
    """A weight does not belong to the indexing set expected here."""


class DegenerateAlphabet(CutoffLabError):
    """Eigenvalue alphabet too close to a Weyl-chamber wall for stable division."""


class HalfPartitionUnsupported(CutoffLabError):
    """Operation defined only for integer weights."""


class TailNotControllable(CutoffLabError):
    """No certified tail bound exists at this time parameter."""


class TooLarge(CutoffLabError):
    """Requested tensor space exceeds the desk-scale guard."""


class UnsupportedPattern(CutoffLabError):
    """Moment pattern outside the supported degree range."""


class UnsupportedSpace(CutoffLabError):
    """Operation not available for this family."""


class UnsupportedStatistic(CutoffLabError):
    """Statistic identifier not recognized by the estimator."""


class FieldMismatch(CutoffLabError):
    """Matrix scalar field does not match the descriptor's."""
