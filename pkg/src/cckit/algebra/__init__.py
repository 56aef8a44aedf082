"""Exact scalar arithmetic: charts, sparse polynomials, rational functions."""

from .chart import Chart
from .linalg import (
    PIVOT_FIRST,
    PIVOT_MIN_DEGREE,
    LinearSolveError,
    rational_nullspace,
    solve_unique,
)
from .parser import ParseError, format_poly, format_scalar, parse_scalar
from .poly import Poly, TermLimitExceeded, grlex_key, refresh_term_limit
from .scalar import PoleError, Scalar, ScalarDivisionError

__all__ = [
    "Chart",
    "LinearSolveError",
    "ParseError",
    "PIVOT_FIRST",
    "PIVOT_MIN_DEGREE",
    "PoleError",
    "Poly",
    "Scalar",
    "ScalarDivisionError",
    "TermLimitExceeded",
    "format_poly",
    "format_scalar",
    "grlex_key",
    "parse_scalar",
    "rational_nullspace",
    "refresh_term_limit",
    "solve_unique",
]
