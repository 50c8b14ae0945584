class DomainError(ValueError):
    """
    Raised when an input lies outside the domain of an operation.

    The management commands map it to exit code 2.
    """
