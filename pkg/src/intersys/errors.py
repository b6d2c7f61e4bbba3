"""Exception hierarchy shared by the library and the command line."""


class IntersysError(Exception):
    """Base class for all errors raised by intersys."""


class ShapeError(IntersysError, ValueError):
    """Operands have incompatible or invalid shapes."""


class PreconditionError(IntersysError, ValueError):
    """A numeric precondition of an operation does not hold."""


class NotSelfAdjointError(PreconditionError):
    """A matrix required to be self-adjoint is not (within tolerance)."""

    def __init__(self, violation: float, tol: float):
        self.violation = violation
        self.tol = tol
        super().__init__(
            f"matrix is not self-adjoint: ||H - H*|| = {violation:.3e} exceeds tol = {tol:.3e}"
        )


class DegenerateModelError(PreconditionError):
    """A closed-form quantity is undefined for a degenerate parameter choice."""
