"""Exception hierarchy.

Every error carries a short ``code`` (``"ZeroRank"``, ``"Overflow"``, ...)
which the command-line front end prints verbatim.
"""


class MulticurveError(Exception):
    code = "Error"


class InvalidInput(MulticurveError, ValueError):
    code = "InvalidInput"


class InvalidContext(InvalidInput):
    code = "InvalidContext"


class InvalidSlice(InvalidInput):
    code = "InvalidSlice"


class ZeroRank(MulticurveError, ZeroDivisionError):
    code = "ZeroRank"


class Overflow(MulticurveError, OverflowError):
    code = "Overflow"


class GenusTooSmall(MulticurveError, ValueError):
    code = "GenusTooSmall"


class WrongMultiplicity(MulticurveError, ValueError):
    code = "WrongMultiplicity"


class BudgetExceeded(MulticurveError):
    code = "BudgetExceeded"


class InconsistentInput(MulticurveError, ValueError):
    code = "InconsistentInput"
