"""Base exception types shared by every package."""


class ToolkitError(Exception):
    """Root of all errors raised by the toolkit."""
    pass


class ValidationError(ToolkitError):
    """Bad input: an invalid nonlinearity, parameter or configuration."""
    pass


class NumericalFailure(ToolkitError):
    """A computation did not reach its tolerance or left its admissible range."""
    pass
