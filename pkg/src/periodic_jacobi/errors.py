"""Exception hierarchy.

Input problems derive from :class:`InputError` (a ``ValueError``); numerical
failures that point at a bug or extreme conditioning derive from
:class:`NumericalError`.
"""


class JacobiError(Exception):
    pass


class InputError(JacobiError, ValueError):
    pass


class NumericalError(JacobiError, ArithmeticError):
    pass


class SumNotZero(InputError):
    pass


class PeriodTooSmall(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class LengthMismatch(InputError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class OrderingViolation(NumericalError):
    pass


class ResidualTooLarge(NumericalError):
    pass


class BracketFailure(NumericalError):
    pass


class NonPositiveArgument(NumericalError):
    pass


class BelowOne(NumericalError):
    pass


class NegativeRadicand(NumericalError):
    pass


class DegenerateDenominator(NumericalError):
    pass


class VanishingSecondDerivative(NumericalError):
    pass


class SingularJacobian(NumericalError):
    pass


class BranchInconsistency(NumericalError):
    pass


class HomotopyStalled(NumericalError):
    """Raised when a continuation leg cannot be completed.

    ``path`` holds the ``(s, residual)`` pairs reached before stalling.
    """

    def __init__(self, message, path=None, s=None):
        super().__init__(message)
        self.path = list(path or [])
        self.s = s
