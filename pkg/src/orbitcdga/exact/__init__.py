"""Exact arithmetic: polynomials over Q, ideal normal forms, cyclotomic fields."""

from .cyclotomic import (
    CycloEmbedding,
    CyclotomicElt,
    PthRootWitness,
    cyclo_embed,
    cyclotomic,
    cyclotomic_coeffs,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    rational_roots,
    unit_root_solutions,
    verify_cyclotomic_identity,
    verify_pth_root_lifting,
)
from .ideal import INFINITE, IdealNF, buchberger, normal_form, quotient_dimension
from .poly import MultiPoly

__all__ = [
    "INFINITE",
    "CycloEmbedding",
    "CyclotomicElt",
    "IdealNF",
    "MultiPoly",
    "PthRootWitness",
    "buchberger",
    "cyclo_embed",
    "cyclotomic",
    "cyclotomic_coeffs",
    "divisors",
    "euler_phi",
    "factorize",
    "is_prime",
    "normal_form",
    "quotient_dimension",
    "rational_roots",
    "unit_root_solutions",
    "verify_cyclotomic_identity",
    "verify_pth_root_lifting",
]
