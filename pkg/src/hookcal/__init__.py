"""Exact verification of the binary-tree hook length formula and its proof chain."""

from hookcal.errors import CapacityError, MalformedTreeError
from hookcal.report import Identity, VerificationReport

__all__ = [
    "CapacityError",
    "Identity",
    "MalformedTreeError",
    "VerificationReport",
]

__version__ = "0.1.0"
