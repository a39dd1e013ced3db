"""Exception hierarchy shared by every module."""


class CrucialPermError(Exception):
    """Base class for errors raised by crucialperm."""


class BudgetError(CrucialPermError):
    """An enumeration was asked to go past its configured size cap."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what}: requested size {requested} exceeds the cap of {cap}")


class DomainError(CrucialPermError, ValueError):
    """Parameters fall outside the domain of an operation."""


class ShapeError(CrucialPermError, ValueError):
    """A tableau does not have the shape an operation requires."""


class ConstraintError(CrucialPermError, ValueError):
    """A tableau violates the constraint an operation requires of it."""


class ValidationError(CrucialPermError, ValueError):
    """Malformed input: not a permutation, not a standard tableau, etc."""
