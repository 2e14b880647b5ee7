"""Error types shared across the package.

Every exception names the violated clause via its class name; the CLI
reports that name verbatim and exits with status 2.
"""


class CichonError(Exception):
    """Base class for all domain errors."""

    @property
    def clause(self) -> str:
        return type(self).__name__


class HorizonMismatch(CichonError):
    """Two finite-horizon objects were compared at different horizons."""


class EmptyFamily(CichonError):
    """An operation requiring at least one family member got none."""


class ZeroWidth(CichonError):
    """A block construction needs width >= 1 at every block index."""


class HorizonTooShort(CichonError):
    """The input does not cover the positions of the block partition."""


class ShapeMismatch(CichonError):
    """Block data does not agree with the partition's widths or cells."""


class NoAdmissibleString(CichonError):
    """Every binary string of the required length is excluded."""


class KindMismatch(CichonError):
    """A poset operation was applied to conditions of the wrong kind."""


class InvalidCondition(CichonError):
    """A condition failed its structural validity checks."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class NotBelowProjection(CichonError):
    """The target condition does not strengthen the projected condition."""


class GrowthTooSmall(CichonError):
    """A new stem value fails the strict growth bound n + sum of sides."""


class SideTooSmall(CichonError):
    """The target side function does not strictly exceed the family sum."""


class FamilyTooLarge(CichonError):
    """The side family is too large for the prefix positions involved."""


class RankTooLarge(CichonError):
    """A stem value's avoidance rank cannot be encoded mod its position."""


class UnknownForcing(CichonError):
    """No knowledge-base entry is recorded under the requested name."""
