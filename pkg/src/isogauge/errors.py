"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when input data violates a documented precondition."""


class CertificationError(RuntimeError):
    """Raised when a quantity that is guaranteed by theory comes out wrong.

    This signals a broken operator (or an invalid use of one), not a
    property of the geometric input.
    """
