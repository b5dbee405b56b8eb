"""Exception hierarchy shared by every module."""


class QbellError(Exception):
    """Base class for all library errors."""


class ValidationError(QbellError, ValueError):
    """Input violates a documented precondition."""


class CapacityError(QbellError):
    """Requested dimension exceeds the dense-kernel cap."""


class DomainError(QbellError, ValueError):
    """Argument outside the domain where a formula is defined."""


class NotPSDError(ValidationError):
    """Matrix has an eigenvalue below the PSD tolerance."""
