"""Polynomials over Q(w) and exact linear algebra."""
from .elimination import SmoothnessReport, common_zero_in_plane, dynamic_gcd, plane_curve_smoothness
from .local import CommonComponent, implicit_series, intersection_number
from .matrix import CycMatrix, Matrix, det, inverse, kron, nullspace, rank, rref, solve
from .ops import (
    BOTH_ZERO,
    ZERO_LEFT,
    gram_matrix,
    proportionality,
    restrict_to_subspace,
    resultant,
    substitute_linear,
    sylvester_matrix,
)
from .parse import PolySyntaxError, parse_poly, parse_scalar
from .poly import MultiPoly, format_poly
from .univariate import RatFunc, UPoly, squarefree_part, upoly_gcd

__all__ = [
    "BOTH_ZERO", "ZERO_LEFT", "CommonComponent", "CycMatrix", "Matrix", "MultiPoly", "PolySyntaxError", "RatFunc",
    "UPoly", "det", "format_poly", "gram_matrix", "implicit_series", "intersection_number", "inverse", "kron", "nullspace", "parse_poly",
    "parse_scalar", "plane_curve_smoothness", "common_zero_in_plane", "dynamic_gcd", "SmoothnessReport", "proportionality", "rank", "restrict_to_subspace", "resultant", "rref",
    "solve", "squarefree_part", "substitute_linear", "sylvester_matrix", "upoly_gcd",
]
