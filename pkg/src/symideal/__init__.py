"""Exact membership certificates and conjecture checks for the symmetric ideals I(2n)."""

from .arith import binom, elementary_symmetric_at_ones, format_rational, parse_rational, schur_dimension
from .certificate import (
    Certificate,
    CertificateError,
    binomial_split_certificate,
    build_certificate_generic,
    build_certificate_structured,
    odd_monomial_certificate,
    symmetric_certificate,
    verify_certificate,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    build_Ird,
    buchberger,
    conjecture35_report,
    conjecture41_check,
    eliminate,
    ideal_equals,
    is_member,
    normal_form,
)
from .linalg import QMatrix, anti_transpose, det, solve, solve_antidiagonal
from .poly import MonomialOrder, PolyRing, Polynomial, parse
from .resolution import BettiTable, betti_table, conjectured_betti, minimal_resolution

__version__ = "0.1.0"
