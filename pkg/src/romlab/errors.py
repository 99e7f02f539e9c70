"""Exception and warning classes raised by romlab."""

__all__ = [
    "RomlabError",
    "InputError",
    "NotHermitian",
    "NotOrthonormal",
    "NotBiorthogonal",
    "IndexOutOfRange",
    "WrongProjectionKind",
    "UnknownExample",
    "NoConvergence",
    "Singular",
    "MatrixOverflow",
    "ZeroStartVector",
    "ImmediateBreakdown",
    "FilteredToZero",
    "RecurrenceBreakdown",
    "DegenerateC",
    "RomlabWarning",
    "IllConditioned",
    "ConditioningWarning",
]


class RomlabError(Exception):
    """Base class for computational failures."""


class InputError(RomlabError, ValueError):
    """An argument or input document is malformed."""


class NotHermitian(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class NotBiorthogonal(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class WrongProjectionKind(InputError):
    """A bound that assumes orthogonal projection was given an oblique ROM."""


class UnknownExample(InputError):
    pass


class NoConvergence(RomlabError):
    pass


class Singular(RomlabError):
    """A shifted or unshifted matrix is numerically singular."""


class MatrixOverflow(RomlabError, OverflowError):
    pass


class ZeroStartVector(InputError):
    pass


class ImmediateBreakdown(RomlabError):
    """Bi-Lanczos cannot start: the output and input vectors are orthogonal."""


class FilteredToZero(RomlabError):
    """A polynomial filter annihilated the starting vector."""


class RecurrenceBreakdown(RomlabError):
    pass


class DegenerateC(RomlabError):
    pass


class RomlabWarning(UserWarning):
    pass


class IllConditioned(RomlabWarning):
    """Construction coefficients are too large to trust."""


class ConditioningWarning(RomlabWarning):
    """Moments are too large for relative errors to be meaningful."""
