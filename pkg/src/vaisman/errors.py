"""Exception hierarchy.

Mathematical failures of a *check* are never raised; they are reported.
Exceptions signal malformed input or a construction whose preconditions do
not hold.
"""


class VaismanError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(VaismanError, ValueError):
    pass


class JacobiError(VaismanError, ValueError):
    def __init__(self, defects):
        self.defects = defects
        i, j, k, _ = defects[0]
        super().__init__(f"Jacobi identity fails on {len(defects)} triple(s), first at basis indices ({i}, {j}, {k})")


class StructureError(VaismanError, ValueError):
    """Input data violates a structural invariant (e.g. J not compatible with g)."""


class NoSolution(VaismanError):
    """dOmega is not of the form Omega ^ theta."""


class NotClosed(VaismanError):
    def __init__(self, theta, message="Lee form exists but is not closed"):
        self.theta = theta
        super().__init__(message)


class Degenerate(VaismanError):
    pass


class NotCentral(VaismanError):
    pass


class NotVaisman(VaismanError):
    pass


class NotUnimodular(VaismanError):
    pass


class UnrecognizedShape(VaismanError):
    pass


class ModificationError(VaismanError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ParseError(VaismanError):
    def __init__(self, message, path=""):
        self.path = path
        self.detail = message
        super().__init__(f"{path}: {message}" if path else message)


class DivisionByZero(ParseError):
    pass
