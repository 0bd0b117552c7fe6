"""Exception hierarchy shared by all modules."""


class EqcmmError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EqcmmError, ValueError):
    """Argument outside the documented domain (angles, counts, indices)."""


class ShapeError(EqcmmError, ValueError):
    """Dimension mismatch between states or matrices."""


class ZeroVectorError(EqcmmError, ArithmeticError):
    """A state with (numerically) zero energy where a direction is needed."""


class EnergyError(EqcmmError, ValueError):
    """A key that should have unit energy does not."""


class DegenerateSetError(EqcmmError, ArithmeticError):
    """Orthonormalization left no usable direction."""


class SingularSolveError(EqcmmError, ArithmeticError):
    """Triangular solve hit a (near) zero pivot."""
