"""Exception hierarchy shared by every primelab module."""


class PrimelabError(Exception):
    """Base class for all errors raised by primelab."""


class InvalidRangeError(PrimelabError, ValueError):
    """An argument lies outside the range an operation accepts."""


class OutOfRangeError(InvalidRangeError):
    """A query exceeds the limit a table was built for."""


class CapacityError(PrimelabError):
    """A requested table would exceed the configured size ceiling."""


class DomainError(PrimelabError, ValueError):
    """A mathematical argument is outside the function's domain."""


class ConvergenceError(PrimelabError, ArithmeticError):
    """A numerical routine could not reach its requested tolerance."""
