"""Exact curve counting in two-dimensional tropical tori."""
from .errors import (DomainError, InvalidCurve, InvalidMarking, NonGenericConfiguration,
                     NotLifting, NotRealizable, SearchIncomplete, TropabelError)
from .exactmath import LaurentHalf, quantum_integer
from .torus import CurveClass, TorusPoint, TropicalTorus

__version__ = "0.1.0"

__all__ = [
    "CurveClass", "DomainError", "InvalidCurve", "InvalidMarking", "LaurentHalf",
    "NonGenericConfiguration", "NotLifting", "NotRealizable", "SearchIncomplete",
    "TorusPoint", "TropabelError", "TropicalTorus", "quantum_integer",
]
