"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class FCLCError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(FCLCError, ValueError):
    """An argument lies outside the domain of the operation."""


class ShapeError(DomainError):
    """Vectors or matrices disagree in length, size or modulus."""


class ColoringError(DomainError):
    """No coloring within the requested color budget was found."""


class UnsupportedParametersError(FCLCError):
    """The parameters are outside every regime the operation supports."""

    exit_code = 2


class CapExceededError(UnsupportedParametersError):
    """An exhaustive enumeration would exceed the configured cap."""

    exit_code = 3


DEFAULT_CAP = 10**6
