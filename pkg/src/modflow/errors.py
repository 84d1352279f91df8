"""Exception hierarchy shared by every module."""


class ModflowError(Exception):
    pass


class InvalidNumber(ModflowError, ValueError):
    pass


class MixedFieldError(InvalidNumber):
    """Arithmetic between surds of two different quadratic fields."""


class OutOfDomain(ModflowError, ValueError):
    pass


class DivisionByZero(ModflowError, ZeroDivisionError):
    pass


class DegenerateDenominator(DivisionByZero):
    pass


class BudgetExceeded(ModflowError, RuntimeError):
    pass


class NoRootInRange(ModflowError, ValueError):
    pass


class UnsupportedHead(ModflowError, ValueError):
    pass


class TailPastTermination(ModflowError, ValueError):
    pass


class NotQuadratic(ModflowError, ValueError):
    pass


class NotInImage(ModflowError, ValueError):
    pass


class PositionOutOfRange(ModflowError, IndexError):
    pass


class ExcludedGeodesic(ModflowError, ValueError):
    pass


class DegenerateEndpoints(ModflowError, ValueError):
    pass


class OutOfWindow(ModflowError, ValueError):
    pass


class NoIntersection(ModflowError, ValueError):
    pass


class FormulaUndefined(ModflowError, ValueError):
    pass


class InvalidRuns(ModflowError, ValueError):
    pass


class InvalidPeriod(ModflowError, ValueError):
    pass


class DualVerificationFailed(ModflowError, ValueError):
    pass


class UnknownSuite(ModflowError, ValueError):
    pass
