"""Exception types raised by the library."""


class InvalidInputError(ValueError):
    """Parameters outside the admissible domain (negative depth, D < 2, ...)."""


class DomainError(ValueError):
    """Evaluation requested where the quantity is undefined."""


class DivergenceError(DomainError):
    """A series was evaluated outside its radius of convergence."""


class DegenerateWavefunctionError(ArithmeticError):
    """The wavefunction norm underflowed and cannot be normalized."""


class GridTooCoarseError(RuntimeError):
    """Node counting was not monotone in energy; the grid step must be reduced."""
