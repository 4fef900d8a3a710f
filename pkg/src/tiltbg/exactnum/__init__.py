"""Exact numeric substrate: rationals, quadratic numbers, rational
intervals, polynomials with Sturm root isolation, and certified sign
verification of polynomial-plus-surd expressions.

All values are immutable and every operation is a pure function; the
module is safe for concurrent use without shared mutable state.
"""

from .certify import DEPTH_CAP, InconclusiveError, SurdExpression, certify_sign, grid_scan_min
from .poly import (Polynomial, count_roots, isolate_real_roots, refine_root,
                   sign_at_root, sturm_chain, sturm_count_open)
from .qnum import (ExactValue, QuadraticNumber, Rational, RationalInterval,
                   exact_compare, exact_sign, fmt_rational, parse_rational,
                   sqrt_enclosure, squarefree_decompose)

DEFAULT_REFINE_WIDTH = Rational(1, 2**40)

__all__ = [
    "DEFAULT_REFINE_WIDTH", "DEPTH_CAP", "ExactValue", "InconclusiveError",
    "Polynomial", "QuadraticNumber", "Rational", "RationalInterval",
    "SurdExpression", "certify_sign", "count_roots", "exact_compare",
    "exact_sign", "fmt_rational", "grid_scan_min", "isolate_real_roots",
    "parse_rational", "refine_root", "sign_at_root", "sqrt_enclosure",
    "squarefree_decompose", "sturm_chain", "sturm_count_open",
]
