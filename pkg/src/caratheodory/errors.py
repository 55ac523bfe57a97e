"""Exception hierarchy shared by every module of the package."""


class CaratheodoryError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(CaratheodoryError, ValueError):
    """An endpoint or value lies outside its admissible range."""


class PreconditionError(CaratheodoryError, ValueError):
    """A documented precondition of an operation was violated."""


class ResourceError(CaratheodoryError, ValueError):
    """A request would build an object beyond the supported size."""


class DomainError(CaratheodoryError, ValueError):
    """An argument lies outside the domain on which the operation is defined."""


class SpecError(CaratheodoryError, ValueError):
    """A partition spec string could not be parsed."""
