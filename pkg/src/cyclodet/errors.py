"""Exception types shared across the package."""


class CyclodetError(Exception):
    """Base class for package errors."""


class ConfigurationError(CyclodetError, ValueError):
    """A config object or parameter combination is invalid."""


class FormatError(CyclodetError, ValueError):
    """An IQ data file or its sidecar metadata is malformed."""


class UnsupportedFormatError(FormatError):
    """The sidecar declares a sample format this package does not read."""
