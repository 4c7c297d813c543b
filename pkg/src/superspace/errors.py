"""Exception types shared across the package."""


class AlgebraMismatch(ValueError):
    """Operands live over Grassmann algebras with different generator counts."""


class ParityError(ValueError):
    """An operand has the wrong (or indefinite) parity for the operation."""


class NotInvertible(ZeroDivisionError):
    """The element or function has no exact inverse (its body vanishes)."""


class BerezinianDoesNotExist(ZeroDivisionError):
    """The lower-right block is not invertible as a function."""


class UndefinedSpinProduct(ValueError):
    """Star product whose left factor has negative reduction spin."""
