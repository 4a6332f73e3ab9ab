"""Exception types shared across the package."""


class ErbimatchError(Exception):
    """Base class for all package-specific errors."""


class EmptyGraphError(ErbimatchError):
    """An operation that needs at least one edge received an empty graph."""


class ConfigurationError(ErbimatchError):
    """A similarity-function or pipeline configuration is unusable."""


class DataFormatError(ErbimatchError):
    """An input file violates its documented format."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)
