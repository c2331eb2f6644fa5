class CountingError(Exception):
    """Base exception for solution-counting errors."""
    pass


class FieldConstructionError(CountingError):
    """Raised when a finite field cannot be built from the given parameters."""
    pass


class FieldElementError(CountingError):
    """Raised when a field element is out of range or an operation is undefined for it."""
    pass


class HypothesisViolationError(CountingError):
    """Raised when a closed form is evaluated outside its hypotheses."""

    def __init__(self, message: str, reasons=None):
        super().__init__(message)
        self.reasons = list(reasons or [])


class IntegralityError(CountingError):
    """Raised when a quantity that must be a rational integer is not one."""
    pass


class ClosedFormMismatchError(CountingError):
    """Raised when two applicable closed forms disagree."""
    pass


class ValidationError(CountingError):
    """Raised when input validation fails."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


class ConfigurationError(CountingError):
    """Raised when there's an error with configuration."""
    pass
