"""Exception hierarchy shared by the kernel, constructions and CLI."""


class CRTangentsError(Exception):
    """Base class; ``category`` is the machine-readable CLI error class."""

    category = "precondition"


class DimensionError(CRTangentsError, ValueError):
    pass


class NotUnitaryError(CRTangentsError, ValueError):
    pass


class PoleError(CRTangentsError, ZeroDivisionError):
    """Evaluation at a point where a pole center vanishes."""


class NotRealError(CRTangentsError, ValueError):
    """A defining function that is not fixed by the conjugation involution."""


class PreconditionError(CRTangentsError, ValueError):
    pass


class OffSurfaceError(PreconditionError):
    pass


class NumericPathRequired(CRTangentsError, TypeError):
    """Raised by the symbolic determinant when components are rational."""


class ParseError(CRTangentsError, ValueError):
    category = "parse"

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class VerificationFailed(CRTangentsError):
    category = "verification-failed"


class IOFailure(CRTangentsError, OSError):
    """Unreadable or malformed input files, unwritable outputs."""

    category = "io"
