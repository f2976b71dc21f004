"""Exact computations with constructible sheaves in low dimension."""
from .errors import (
    BoundaryPoint,
    ConsheafError,
    FieldMismatch,
    MalformedInput,
    ProperError,
    RefinementError,
    TruncationError,
)
from .intervals import GradedBarcode, GradedVectorSpace, Interval
from .linalg import GF2, GF3, QQ, make_field

__version__ = "0.1.0"

__all__ = [
    "BoundaryPoint",
    "ConsheafError",
    "FieldMismatch",
    "GF2",
    "GF3",
    "GradedBarcode",
    "GradedVectorSpace",
    "Interval",
    "MalformedInput",
    "ProperError",
    "QQ",
    "RefinementError",
    "TruncationError",
    "make_field",
]
