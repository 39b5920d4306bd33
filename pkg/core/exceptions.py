"""
Exception types raised by the trace engine
"""


class EngineError(ValueError):
    """Base class for all engine errors"""


class DegreeMismatchError(EngineError):
    """Raised when graded scalars of different log-q degree are added or compared"""

    def __init__(self, left, right, operation="add"):
        super().__init__(f"Cannot {operation} degree {left} and degree {right} quantities")
        self.left = left
        self.right = right


class PlaceSetError(EngineError):
    """Raised when a set of places is not large enough"""

    def __init__(self, bullets):
        self.bullets = list(bullets)
        super().__init__("Place set is not large enough: " + ", ".join(self.bullets))


class SupportError(EngineError):
    """Raised when a function lacks the compact support an operation needs"""


class SaturationError(EngineError):
    """Raised when the depth budget runs out before dimensions stabilise"""


class ConfigError(EngineError):
    """Raised for invalid experiment configuration"""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
