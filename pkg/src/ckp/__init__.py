"""Exact computer algebra for the CKP Fock space: Heisenberg decomposition,
symplectic fermions on the highest weight space, and the bosonized fields."""

from .core import FockVector, apply_mode, charge, degree, format_half, monomial, parse_half
from .hwv import hwv_basis, is_hwv
from .operators import heisenberg_mode, hirota_residue, twisted_heisenberg_mode, virasoro_mode

__version__ = "0.1.0"

__all__ = [
    "FockVector",
    "apply_mode",
    "charge",
    "degree",
    "format_half",
    "heisenberg_mode",
    "hirota_residue",
    "hwv_basis",
    "is_hwv",
    "monomial",
    "parse_half",
    "twisted_heisenberg_mode",
    "virasoro_mode",
]
