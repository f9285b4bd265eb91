"""Exact arithmetic checks for a general-type criterion on bilevel moduli spaces."""

from .errors import InvalidArgument, ResourceLimit, UnsupportedDegree, UnsupportedModulus

__version__ = "0.1.0"

__all__ = ["InvalidArgument", "ResourceLimit", "UnsupportedDegree", "UnsupportedModulus"]
