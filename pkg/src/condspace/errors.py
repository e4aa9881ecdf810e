class DomainError(ValueError):
    """An input violates a mathematical precondition (norm, size, index...)."""


class ZeroProbabilityError(DomainError):
    """Post-selection onto an event that carries no probability."""


class ParseError(ValueError):
    """Malformed condition text or interchange document."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
