"""Exception types shared across the package."""


class QPfaffError(Exception):
    pass


class NotDivisible(QPfaffError, ArithmeticError):
    """Exact division left a nonzero remainder."""


class DivisionByZero(QPfaffError, ZeroDivisionError):
    pass


class ZeroPoint(QPfaffError, ValueError):
    """Evaluation of a Laurent polynomial at 0."""


class PreconditionViolated(QPfaffError, ValueError):
    pass


class BudgetExceeded(QPfaffError, RuntimeError):
    """Enumeration would exceed the configured size budget."""


class AmbientMismatch(QPfaffError, ValueError):
    pass


class IntegralityViolated(QPfaffError, ArithmeticError):
    """A coefficient expected in Z[q, q^-1] is not a Laurent polynomial.

    Never recovered from: it would contradict the integrality of the
    basis change, so callers let it propagate.
    """


class ParseError(QPfaffError, ValueError):
    pass
