"""Deciding whether polynomials in two variables have a common zero.

Used for smoothness of plane curves: a curve ``F = 0`` in P^2 is smooth iff
its three partial derivatives have no common projective zero.  On each
affine chart the first variable is eliminated by resultants; the gcd ``h``
of the eliminants contains every possible second coordinate.  If ``h`` is
constant the chart is clean.  Otherwise the gcd in the first variable is
computed over ``K[v]/(h)`` by dynamic evaluation: whenever a leading
coefficient is a zero divisor, ``h`` is split into coprime factors and each
branch is continued separately.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..exactnum import ONE
from .ops import resultant
from .poly import MultiPoly
from .univariate import UPoly, squarefree_part, upoly_gcd

# polynomial in u over K[v]/(h): coefficient list, lowest degree first
_Coeffs = list


def _mod_inverse(c: UPoly, h: UPoly) -> UPoly:
    r0, r1 = h, c % h
    s0, s1 = UPoly(), UPoly.constant(ONE)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ArithmeticError("not invertible modulo h")
    return (s0 * r0.c[0].inv()) % h


def _split_normalize(p: _Coeffs, h: UPoly) -> Iterator[tuple[UPoly, _Coeffs]]:
    p = [c % h for c in p]
    while p:
        c = p[-1]
        if not c:
            p.pop()
            continue
        g = upoly_gcd(c, h)
        if g.degree == 0:
            yield h, p
            return
        if g.degree == h.degree:
            p.pop()
            continue
        for branch in (g, h.exact_div(g).monic()):
            yield from _split_normalize(p, branch)
        return
    yield h, []


def _prem(a: _Coeffs, b: _Coeffs, h: UPoly) -> _Coeffs:
    """Remainder of ``a`` by ``b`` whose leading coefficient is a unit mod ``h``."""
    a = [c % h for c in a]
    inv = _mod_inverse(b[-1], h)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        if not a[-1]:
            a.pop()
            continue
        q = (a[-1] * inv) % h
        shift = len(a) - 1 - db
        for j, bc in enumerate(b):
            a[shift + j] = (a[shift + j] - q * bc) % h
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def _gcd2(a: _Coeffs, b: _Coeffs, h: UPoly) -> Iterator[tuple[UPoly, _Coeffs]]:
    for h1, bn in _split_normalize(b, h):
        if not bn:
            yield from _split_normalize(a, h1)
        else:
            yield from _gcd2(bn, _prem(a, bn, h1), h1)


def dynamic_gcd(polys: Sequence[_Coeffs], h: UPoly) -> list[tuple[UPoly, _Coeffs]]:
    """gcd over ``K[v]/(h)`` of several polynomials in ``u``, split into branches."""
    branches = [(h, list(polys[0]))]
    for p in polys[1:]:
        nxt = []
        for hb, g in branches:
            nxt.extend(_gcd2(g, list(p), hb))
        branches = nxt
    out = []
    for hb, g in branches:
        out.extend(_split_normalize(g, hb))
    return out


def _as_nested(p: MultiPoly, u: str, v: str) -> _Coeffs:
    coeffs = p.coefficients(u)
    d = max(coeffs) if coeffs else -1
    return [UPoly.from_poly(coeffs[k], v) if k in coeffs else UPoly() for k in range(d + 1)]


@dataclass
class ChartVerdict:
    chart: str
    eliminant: UPoly
    branches: list = field(default_factory=list)
    common_zero: bool = False

    def summary(self) -> str:
        if self.eliminant.degree <= 0:
            return f"{self.chart}=1: eliminant is a nonzero constant"
        kinds = ", ".join(f"deg h={hb.degree}: gcd deg {len(g) - 1}" for hb, g in self.branches)
        return f"{self.chart}=1: eliminant degree {self.eliminant.degree}; {kinds}"


def common_zero_in_plane(polys: Sequence[MultiPoly], u: str, v: str, chart: str = "") -> ChartVerdict:
    """Decide whether ``polys`` (in ``u, v`` only) share a zero over the algebraic closure."""
    polys = [p for p in polys if not p.is_zero()]
    eliminants: list[UPoly] = []
    for i, p in enumerate(polys):
        if p.degree(u) <= 0:
            eliminants.append(UPoly.from_poly(p.with_variables((u, v)), v))
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            p, q = polys[i], polys[j]
            if p.degree(u) > 0 and q.degree(u) > 0:
                r = resultant(p, q, u)
                if not r.is_zero():
                    eliminants.append(UPoly.from_poly(r.with_variables((u, v)), v))
    if not eliminants:
        raise ArithmeticError("elimination inconclusive: every pairwise resultant vanishes")
    h = eliminants[0]
    for e in eliminants[1:]:
        h = upoly_gcd(h, e)
    h = squarefree_part(h)
    verdict = ChartVerdict(chart=chart, eliminant=h)
    if h.degree <= 0:
        return verdict
    nested = [_as_nested(p, u, v) for p in polys]
    verdict.branches = dynamic_gcd(nested, h)
    verdict.common_zero = any(len(g) != 1 for _, g in verdict.branches)
    return verdict


@dataclass
class SmoothnessReport:
    smooth: bool
    charts: list[ChartVerdict]

    def summary(self) -> str:
        return "; ".join(c.summary() for c in self.charts)


def plane_curve_smoothness(curve: MultiPoly, variables: Sequence[str] | None = None) -> SmoothnessReport:
    """Smoothness of a reduced plane curve via its partials, chart by chart."""
    variables = tuple(variables or curve.variables)
    if len(variables) != 3:
        raise ValueError("plane curves need exactly three homogeneous variables")
    curve = curve.with_variables(variables)
    if not curve.is_homogeneous():
        raise ValueError("curve equation must be homogeneous")
    partials = [curve.diff(x) for x in variables]
    charts = []
    for k, c in enumerate(variables):
        u, v = [x for x in variables if x != c]
        dehom = [p.subs({c: 1}, (u, v)) for p in partials]
        charts.append(common_zero_in_plane(dehom, u, v, chart=c))
    return SmoothnessReport(smooth=not any(ch.common_zero for ch in charts), charts=charts)
