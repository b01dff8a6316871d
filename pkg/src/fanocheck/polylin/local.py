"""Local algebra at the origin: implicit power series and intersection numbers.

``intersection_number`` follows Fulton's algorithm for two plane curves at
the origin.  Applied to power series truncated above degree ``N`` the result
is exact whenever it is at most ``N``: if ``dim O/(p, q) = k`` then
``m^(k+1)`` lies in ``m * (p, q)``, so changing ``p`` or ``q`` by terms of
order above ``k`` leaves the ideal unchanged (Nakayama).
"""
from __future__ import annotations

from typing import Sequence

from ..exactnum import ZERO
from .matrix import Matrix, inverse
from .poly import MultiPoly


class CommonComponent(ArithmeticError):
    """The two curves share a component through the origin."""


def _at_origin(p: MultiPoly):
    return p.constant_term()


def intersection_number(P: MultiPoly, Q: MultiPoly, x: str, y: str, max_steps: int = 10_000) -> int:
    """``dim_K K[x,y]_(x,y) / (P, Q)`` for polynomials in ``x, y``."""
    vs = (x, y)
    P, Q = P.with_variables(vs), Q.with_variables(vs)
    ypoly = MultiPoly.var(y, vs)
    total = 0
    stack = [(P, Q)]
    steps = 0
    while stack:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("intersection number did not terminate")
        P, Q = stack.pop()
        if P.is_zero() or Q.is_zero():
            raise CommonComponent("a curve is zero")
        if _at_origin(P) or _at_origin(Q):
            continue
        p = P.subs({y: 0}, vs)
        q = Q.subs({y: 0}, vs)
        r = p.degree(x) if not p.is_zero() else 0
        s = q.degree(x) if not q.is_zero() else 0
        if r > s:
            P, Q, p, q, r, s = Q, P, q, p, s, r
        if r == 0:
            # P(x, 0) vanishes, so y divides P
            if q.is_zero():
                raise CommonComponent("both curves contain y = 0")
            total += min(m[0] for m in q.terms)
            stack.append((P.exact_div(ypoly), Q))
            continue
        lp = p.terms[max(p.terms)]
        lq = q.terms[max(q.terms)]
        shift = MultiPoly.var(x, vs) ** (s - r)
        stack.append((P, Q.scale(lp) - (P * shift).scale(lq)))
    return total


def implicit_series(equations: Sequence[MultiPoly], unknowns: Sequence[str], params: Sequence[str],
                    order: int) -> dict[str, MultiPoly]:
    """Power series ``u_i(params)`` with ``u_i(0) = 0`` solving ``equations = 0``, truncated at ``order``.

    Requires the equations to vanish at the origin with an invertible
    Jacobian in the unknowns there; the iteration uses that constant
    Jacobian and gains at least one order per step.
    """
    unknowns, params = tuple(unknowns), tuple(params)
    allv = params + unknowns
    eqs = [e.with_variables(allv) for e in equations]
    if len(eqs) != len(unknowns):
        raise ValueError("need as many equations as unknowns")
    origin = {v: 0 for v in allv}
    for e in eqs:
        if e.evaluate(origin):
            raise ValueError("equations do not vanish at the origin")
    J = Matrix([[e.diff(u).evaluate(origin) for u in unknowns] for e in eqs])
    Jinv = inverse(J)
    sol = {u: MultiPoly.zero(params) for u in unknowns}
    for _ in range(order + 1):
        vals = [e.subs(sol, params).truncate(order) for e in eqs]
        if all(v.is_zero() for v in vals):
            break
        new = {}
        for i, u in enumerate(unknowns):
            corr = MultiPoly.zero(params)
            for j, v in enumerate(vals):
                c = Jinv.rows[i][j]
                if c != ZERO:
                    corr = corr + v.scale(c)
            new[u] = (sol[u] - corr).truncate(order)
        sol = new
    return sol
