"""Exception types raised by the library."""


class TwistkickError(Exception):
    """Base class for all library errors."""


class DomainError(TwistkickError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class UnsupportedConfigurationError(TwistkickError, ValueError):
    """The requested combination of beam/object parameters is not supported."""


class PoleError(DomainError):
    """A ratio of Bessel functions was requested at a zero of its denominator."""


class StepUnderflowError(DomainError):
    """A finite-difference stencil would cross the coordinate axis."""
