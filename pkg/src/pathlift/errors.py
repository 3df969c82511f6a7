"""Exception hierarchy for pathlift."""


class PathliftError(Exception):
    """Base class for all errors raised by this package."""


class EvaluationOverflow(PathliftError, ArithmeticError):
    """A polynomial evaluation produced a non-finite value.

    ``index`` is the offending position when a batch was evaluated.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class TauUnderflow(PathliftError):
    """The perturbation size fell below the double-precision floor."""


class DerivativeVanishes(PathliftError, ZeroDivisionError):
    pass


class NodeCollision(PathliftError):
    """Deflation divisor vanishes at interpolation nodes after every rotation."""


class InsufficientCrossings(PathliftError):
    pass


class TheoremViolation(PathliftError):
    """No quadrant produced half the roots. Indicates a precision failure."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats


class NoConvergence(PathliftError):
    pass
