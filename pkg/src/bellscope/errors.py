"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class NumericError(ArithmeticError):
    """A numerical routine failed to converge or produced non-finite values."""


class DegenerateStateError(NumericError):
    """The state carries no two-body correlations to build settings from."""
