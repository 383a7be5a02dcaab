"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``DomainError`` and subclasses to 3,
``PrecisionExhausted`` to 4.
"""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class NonOrdinaryError(DomainError):
    """No p-adic unit root exists (the eigenvalue a_p is not a unit)."""


class PoleError(DomainError):
    """Evaluation at a pole (trivial character / T at the pole centre)."""


class InsufficientOrder(DomainError):
    """The q-expansion is too short for the requested linear algebra."""


class NotCompatible(DomainError):
    """Data that should agree modulo an ideal does not.

    ``witness`` carries the offending word (or other key) when known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionExhausted(ArithmeticError):
    """A quantity cannot be distinguished from zero at working precision."""
