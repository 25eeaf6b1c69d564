"""Exception types shared across the package."""


class RbmTopoError(Exception):
    """Base class for all package errors."""


class DimensionError(RbmTopoError, ValueError):
    """Configuration length or visible count does not match."""


class ResourceError(RbmTopoError):
    """A dense enumeration would exceed the configured cap."""


class SynthesisError(RbmTopoError):
    """A gadget or circuit could not be synthesized."""


class FitError(RbmTopoError):
    """The GF(2) phase fit has no solution."""


class StructureError(RbmTopoError):
    """A network has a shape the elimination pass does not handle."""


class ParseError(RbmTopoError, ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
