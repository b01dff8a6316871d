"""Linear substitutions, restrictions, resultants and proportionality tests."""
from __future__ import annotations

from typing import Sequence

from ..exactnum import ZERO, Cyclotomic
from .matrix import Matrix, det
from .poly import MultiPoly

ZERO_LEFT = "zero-left"
BOTH_ZERO = "both-zero"


def substitute_linear(p: MultiPoly, m: Matrix) -> MultiPoly:
    """Return ``p(M x)``: variable ``i`` becomes ``sum_j M[i][j] * x_j``."""
    n = len(p.variables)
    if m.shape != (n, n):
        raise ValueError(f"matrix of shape {m.shape} does not act on {n} variables")
    return restrict_to_subspace(p, m, p.variables)


def restrict_to_subspace(p: MultiPoly, param: Matrix, new_variables: Sequence[str]) -> MultiPoly:
    """Pull ``p`` back along ``x_i = sum_j param[i][j] * t_j``.

    Columns of ``param`` are the images of the new basis vectors.
    """
    new_variables = tuple(new_variables)
    if param.nrows != len(p.variables) or param.ncols != len(new_variables):
        raise ValueError(
            f"parametrization of shape {param.shape} does not map {len(new_variables)} "
            f"new variables to {len(p.variables)} old ones"
        )
    ts = MultiPoly.gens(new_variables)
    images = []
    for row in param.rows:
        acc = MultiPoly.zero(new_variables)
        for c, t in zip(row, ts):
            if c:
                acc = acc + (c * t if isinstance(c, MultiPoly) else t.scale(c))
        images.append(acc)
    target = new_variables
    for im in images:
        for v in im.variables:
            if v not in target:
                target = target + (v,)
    return p.compose(images, target)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> Matrix:
    p, q = p._align(q)
    if var not in p.variables:
        raise ValueError(f"{var} does not occur")
    m, n = p.degree(var), q.degree(var)
    if m <= 0 or n <= 0:
        raise ValueError(f"resultant needs positive degree in {var} (got {m}, {n})")
    pc = p.coefficients(var)
    qc = q.coefficients(var)
    zero = MultiPoly.zero(p.variables)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = qc.get(k, zero)
        rows.append(row)
    return Matrix(rows, coerce=None)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant eliminating ``var``; the result keeps the variable tuple."""
    d = det(sylvester_matrix(p, q, var))
    if not isinstance(d, MultiPoly):
        d = MultiPoly.constant(d, p.variables)
    return d


def proportionality(p: MultiPoly, q: MultiPoly):
    """Scalar ``c`` with ``p = c*q``; ``ZERO_LEFT``/``BOTH_ZERO`` markers; else ``None``."""
    if p.is_zero():
        return BOTH_ZERO if q.is_zero() else ZERO_LEFT
    if q.is_zero():
        return None
    a, b = p._align(q)
    if set(a.terms) != set(b.terms):
        return None
    mono = next(iter(b.terms))
    c = a.terms[mono] / b.terms[mono]
    for m, v in b.terms.items():
        if a.terms[m] != c * v:
            return None
    return c


def gram_matrix(q: MultiPoly, variables: Sequence[str] | None = None) -> Matrix:
    """Symmetric matrix ``A`` with ``q(x) = x^T A x`` for a quadratic form."""
    variables = tuple(variables) if variables is not None else q.variables
    q = q.with_variables(variables)
    n = len(variables)
    half = Cyclotomic(1) / 2
    rows = [[ZERO] * n for _ in range(n)]
    for m, c in q.terms.items():
        if sum(m) != 2:
            raise ValueError(f"{q} is not a quadratic form")
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            rows[i][i] = rows[i][i] + c
        else:
            rows[i][j] = rows[i][j] + c * half
            rows[j][i] = rows[j][i] + c * half
    return Matrix(rows, coerce=None)


def linear_form_coefficients(form: MultiPoly, variables: Sequence[str]) -> list[Cyclotomic]:
    form = form.with_variables(tuple(variables))
    if form.total_degree() > 1 or form.constant_term():
        raise ValueError(f"{form} is not a linear form")
    out = [ZERO] * len(variables)
    for m, c in form.terms.items():
        out[m.index(1)] = c
    return out
