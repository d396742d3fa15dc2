"""Exception hierarchy shared by every module.

Errors split into two families.  :class:`InputError` covers malformed or
out-of-contract input and maps to exit status 1 on the command line.
:class:`InternalInvariantViolation` signals that an algorithmic invariant
failed, which is a bug rather than a user mistake, and maps to exit status 2.
The class name of each error doubles as its diagnostic tag, so messages
printed by the CLI always start with it (``DartMissing: ...``).
"""


class HoliestError(Exception):
    """Base class of all errors raised by the package."""

    @property
    def tag(self):
        return type(self).__name__

    def __str__(self):
        msg = super().__str__()
        return f"{self.tag}: {msg}" if msg else self.tag


class InputError(HoliestError):
    """Input violates a documented precondition."""


# embedding
class NotConnected(InputError):
    pass


class DartMultiplyListed(InputError):
    pass


class DartMissing(InputError):
    pass


class NonIntegralGenus(InputError):
    pass


class ParseError(InputError):
    pass


# homology / perturb
class NotACirculation(InputError):
    pass


class NotASpanningCotree(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class VariantMismatch(DimensionMismatch):
    pass


# sssp
class NegativeCostDart(InputError):
    pass


class UnreachedVertex(InputError):
    pass


class ZeroCostCycleDetected(InputError):
    pass


# mssp
class NotPlanar(InputError):
    pass


# distances
class NonMonotone(InputError):
    pass


class WalkDisconnected(InputError):
    pass


# oracles
class NegativeCycle(InputError):
    pass


class TooLarge(InputError):
    pass


class Infeasible(InputError):
    pass


class BadParameters(InputError):
    pass


class InternalInvariantViolation(HoliestError):
    """An invariant guaranteed by the theory did not hold."""


class TieDetected(InternalInvariantViolation):
    """Two active darts reached the same minimum pivot threshold."""
