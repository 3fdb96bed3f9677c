"""Exact arithmetic layer: rationals, sparse polynomials, linear algebra."""

from .linalg import SingularMatrixError, SparseEchelon, determinant, exact_rank, nullspace, row_reduce, solve_square
from .poly import MultiPoly, NotDivisibleError, VariableMismatchError
from .rational import format_rational, parse_rational
from .vandermonde import ConfluentSpec, confluent_det_formula, confluent_vandermonde, superfactorial

__all__ = [
    "ConfluentSpec",
    "MultiPoly",
    "NotDivisibleError",
    "SingularMatrixError",
    "SparseEchelon",
    "VariableMismatchError",
    "confluent_det_formula",
    "confluent_vandermonde",
    "determinant",
    "exact_rank",
    "format_rational",
    "nullspace",
    "parse_rational",
    "row_reduce",
    "solve_square",
    "superfactorial",
]
