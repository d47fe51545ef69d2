class SpinorQCError(Exception):
    """Base class for kernel errors."""


class SignatureMismatch(SpinorQCError, ValueError):
    pass


class SlotMismatch(SpinorQCError, ValueError):
    pass


class NotInIdealError(SpinorQCError, ValueError):
    pass


class NotEvenError(SpinorQCError, ValueError):
    pass


class ExpDomainError(SpinorQCError, ValueError):
    pass


class ConvergenceError(SpinorQCError, ArithmeticError):
    pass
