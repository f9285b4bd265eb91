"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates an operation's precondition."""


class UnsupportedDegree(InvalidArgument):
    """A polynomial exceeds the degree covered by the Faulhaber table."""


class UnsupportedModulus(InvalidArgument):
    """The modulus is outside the supported range (e.g. even, or r = 2)."""


class ResourceLimit(RuntimeError):
    """An enumeration oracle was asked to exceed its size guard."""
