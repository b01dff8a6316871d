"""Family 2.16: the A4-symmetric pencil of quadrics V4 in P^5 and its conics.

V4 = {f = g = 0}.  The group acts by ``p -> p(M x)``; ``tau`` swaps the two
copies of U3.  The four invariant conics are cut out by the invariant
planes of the pencil ``Pi(l:m) = {l x_k + m x_(k+3) = 0}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import chow, ruled
from .assets import load_asset
from .exactnum import ONE, ZERO, Cyclotomic, format_cyclotomic
from .grouprep import (
    MatrixGroup,
    Representation,
    character_eigenspace_dim,
    linear_characters,
    min_orbit_length_on_P1,
    semi_invariant_character,
    sym_power_rep,
    tensor_rep,
)
from .polylin.elimination import plane_curve_smoothness
from .polylin.local import intersection_number, implicit_series
from .polylin.matrix import Matrix, det, nullspace, rank
from .polylin.ops import proportionality, restrict_to_subspace, substitute_linear
from .polylin.parse import parse_poly, parse_scalar
from .polylin.poly import MultiPoly, format_poly
from .polylin.univariate import RatFunc, UPoly, squarefree_part, upoly_gcd
from .report import FAIL, FLAGGED, PASS, CheckReport, compare, run_check

SCENARIO = "2-16"
W = Cyclotomic(0, 1)
PLANE_VARS = ("t0", "t1", "t2")
ROOTS_6 = tuple(s * W ** k for s in (ONE, -ONE) for k in range(3))


def _poly_str(p: MultiPoly) -> str:
    return format_poly(p)


# -- scenario data ------------------------------------------------------------

class Scenario216:
    def __init__(self, data: dict | None = None):
        self.data = data or load_asset(SCENARIO)
        d = self.data
        self.vars = tuple(d["variables"])
        self.f = parse_poly(d["f"], self.vars)
        self.g = parse_poly(d["g"], self.vars)
        self.tau = Matrix.parse(d["tau"])
        forms = {"f": self.f, "g": self.g}
        for k, text in d["forms"].items():
            forms[k] = parse_poly(text, self.vars)
        for k, src in d["tau_images"].items():
            forms[k] = substitute_linear(forms[src], self.tau)
        self.forms = forms
        self.generators = {k: Matrix.parse(m) for k, m in d["group"]["generators"].items()}

    @cached_property
    def group(self) -> MatrixGroup:
        return MatrixGroup(list(self.generators.values()), name=self.data["group"]["name"])

    def plane(self, key: str) -> tuple[Cyclotomic, Cyclotomic]:
        p = self.data["planes"][key] if key in self.data["planes"] else self.data[key]
        return parse_scalar(p["lambda"]), parse_scalar(p["mu"])

    def conic_keys(self) -> list[str]:
        return sorted(self.data["planes"])


def plane_basis(lam, mu) -> Matrix:
    """6x3 parametrization of ``Pi(l:m)``: ``x_k = -m t_k``, ``x_(k+3) = l t_k``."""
    rows = [[ZERO] * 3 for _ in range(6)]
    for k in range(3):
        rows[k][k] = -Cyclotomic.coerce(mu)
        rows[k + 3][k] = Cyclotomic.coerce(lam)
    return Matrix(rows, coerce=None)


def plane_forms(lam, mu) -> Matrix:
    """The three linear forms ``l x_k + m x_(k+3)`` cutting out the plane."""
    rows = [[ZERO] * 6 for _ in range(3)]
    for k in range(3):
        rows[k][k] = Cyclotomic.coerce(lam)
        rows[k][k + 3] = Cyclotomic.coerce(mu)
    return Matrix(rows, coerce=None)


def restrict_to_plane(p: MultiPoly, lam, mu) -> MultiPoly:
    return restrict_to_subspace(p, plane_basis(lam, mu), PLANE_VARS)


# -- characters ----------------------------------------------------------------

def character_table(sc: Scenario216) -> dict[str, Cyclotomic | None]:
    """Value of each form's character on the order-3 generator (None if not semi-invariant)."""
    out = {}
    idx = list(sc.generators).index("mu3")
    for name, p in sc.forms.items():
        chi = semi_invariant_character(p, sc.group)
        out[name] = None if chi is None else chi.values[idx]
    return out


def check_characters(sc: Scenario216) -> list[CheckReport]:
    table = character_table(sc)
    values = {k: parse_scalar(v) for k, v in sc.data["character_values"].items()}
    expected, computed, bad = {}, {}, []
    for chi, names in sc.data["characters"].items():
        for n in names:
            expected[n] = chi
            got = table.get(n)
            label = next((c for c, v in values.items() if v == got), "none")
            computed[n] = label
            if label != chi:
                bad.append(n)
    # every form must be covered by the grouping
    missing = sorted(set(sc.forms) - set(expected))
    reports = [CheckReport(
        "characters", SCENARIO, PASS if not bad and not missing else FAIL,
        "; ".join(f"{c}: {', '.join(ns)}" for c, ns in sc.data["characters"].items()),
        "; ".join(f"{c}: {', '.join(n for n in sorted(computed) if computed[n] == c)}" for c in values),
        "f, f_{1,i} invariant; f_{3,i} character chi1; g, f_{2,i} character chi2",
        detail=f"mismatched: {bad}; ungrouped: {missing}" if bad or missing else "",
    )]
    # tau preserves the character of each pulled-back form
    pairs = sorted(sc.data["tau_images"].items())
    ok = all(table[a] == table[b] for a, b in pairs)
    reports.append(CheckReport(
        "characters-tau", SCENARIO, PASS if ok else FAIL,
        "f_{j,1}, f_{j,3} and their tau-images share characters",
        "equal" if ok else "differ", "f_{j,2}, f_{j,4} defined by tau-pullback"))
    return reports


def check_group(sc: Scenario216) -> CheckReport:
    return compare("group-order", SCENARIO, sc.data["group"]["order"], sc.group.order, "G is A4 of order 12")


# -- invariant planes and conics ---------------------------------------------

def _minors(p: MultiPoly, q: MultiPoly, vars_: Sequence[str]) -> list[MultiPoly]:
    """2x2 minors of the coefficient matrix of two quadrics in ``vars_``."""
    cp = _coeff_map(p, vars_)
    cq = _coeff_map(q, vars_)
    keys = sorted(set(cp) | set(cq))
    out = []
    for a, b in itertools.combinations(keys, 2):
        pa, pb = cp.get(a), cq.get(b)
        qa, qb = cq.get(a), cp.get(b)
        m = _mul(pa, pb) - _mul(qa, qb)
        if not m.is_zero():
            out.append(m)
    return out


def _coeff_map(p: MultiPoly, vars_: Sequence[str]) -> dict[tuple, MultiPoly]:
    """Coefficients of ``p`` in the monomials of ``vars_``, as polynomials in the other variables."""
    others = tuple(v for v in p.variables if v not in vars_)
    idx = [p.variables.index(v) for v in vars_]
    oidx = [p.variables.index(v) for v in others]
    out: dict[tuple, dict] = {}
    for m, c in p.terms.items():
        key = tuple(m[i] for i in idx)
        out.setdefault(key, {})[tuple(m[i] for i in oidx)] = c
    return {k: MultiPoly(others, v) for k, v in out.items()}


def _mul(a, b) -> MultiPoly:
    if a is None or b is None:
        return MultiPoly.zero(("lam", "mu"))
    return (a * b).with_variables(("lam", "mu"))


def recognize_cyclotomic(z: complex, max_den: int = 64) -> Cyclotomic:
    """Nearest ``a + b w`` with small denominators to a complex number."""
    b = Fraction(z.imag / (3 ** 0.5 / 2)).limit_denominator(max_den)
    a = Fraction(z.real + float(b) / 2).limit_denominator(max_den)
    return Cyclotomic(a, b)


@dataclass
class PlaneSearch:
    minors_gcd: UPoly
    roots: list  # (lam, mu) pairs, exact
    at_infinity: bool


def find_invariant_planes(f: MultiPoly, g: MultiPoly) -> PlaneSearch:
    """Parameters ``(l:m)`` where ``f`` and ``g`` restrict to proportional forms on ``Pi(l:m)``.

    The 2x2 minors of the coefficient matrix are binary forms in ``(l, m)``.
    On ``l = 1`` their gcd is a polynomial in ``m``; its roots are located
    numerically, recognised in Q(w) and then confirmed exactly.  ``l = 0`` is
    tested directly.
    """
    lam, mu = MultiPoly.gens(("lam", "mu"))
    rows = [[MultiPoly.zero(("lam", "mu"))] * 3 for _ in range(6)]
    for k in range(3):
        rows[k][k] = -mu
        rows[k + 3][k] = lam
    basis = Matrix(rows, coerce=None)
    fr = restrict_to_subspace(f, basis, PLANE_VARS)
    gr = restrict_to_subspace(g, basis, PLANE_VARS)
    minors = _minors(fr, gr, PLANE_VARS)
    if not minors:
        raise ArithmeticError("restrictions are proportional on every plane of the pencil")
    h = None
    for m in minors:
        u = UPoly.from_poly(m.subs({"lam": 1}, ("mu",)), "mu")
        h = u if h is None else upoly_gcd(h, u)
    h = squarefree_part(h).monic()
    roots = []
    if h.degree > 0:
        coeffs = [complex(c.a - c.b / 2, float(c.b) * 3 ** 0.5 / 2) for c in reversed(h.c)]
        for z in np.roots(coeffs):
            r = recognize_cyclotomic(complex(z))
            if h(r):
                raise ArithmeticError(f"numerical root {z} is not in Q(w)")
            roots.append((ONE, r))
        if len({r for _, r in roots}) != h.degree:
            raise ArithmeticError("root recognition lost a root")
    inf = all(m.evaluate({"lam": 0, "mu": 1}) == ZERO for m in minors)
    if inf:
        roots.append((ZERO, ONE))
    return PlaneSearch(h, roots, inf)


def conic_of_plane(f: MultiPoly, g: MultiPoly, lam, mu) -> tuple[MultiPoly, MultiPoly, Cyclotomic]:
    """``(q1, q2, c)``: pencil member ``q1`` vanishing on the plane, the other member ``q2``
    whose restriction is the conic, and ``c`` with ``q1 = f + c g`` (``c = None`` means ``q1 = g``)."""
    fr, gr = restrict_to_plane(f, lam, mu), restrict_to_plane(g, lam, mu)
    if fr.is_zero():
        return f, g, ZERO
    if gr.is_zero():
        return g, f, None
    c = proportionality(fr, gr)
    if not isinstance(c, Cyclotomic):
        raise ValueError("f and g are not proportional on this plane")
    return f - g.scale(c), g, -c


def quadratic_gram(q: MultiPoly, vars_: Sequence[str]) -> Matrix:
    """Half Hessian of a quadratic form in ``vars_`` whose coefficients may be polynomials."""
    half = Cyclotomic(Fraction(1, 2))
    rows = []
    for a in vars_:
        da = q.diff(a)
        rows.append([da.diff(b).scale(half) for b in vars_])
    return Matrix(rows, coerce=None)


def _const_gram(q: MultiPoly, vars_: Sequence[str]) -> Matrix:
    return quadratic_gram(q, vars_).map(lambda x: x.constant_term() if isinstance(x, MultiPoly) else x)


@dataclass
class ConicReport:
    key: str
    lam: Cyclotomic
    mu: Cyclotomic
    conic: MultiPoly
    gram_rank: int


def invariant_conics(sc: Scenario216) -> dict[str, ConicReport]:
    out = {}
    for key in sc.conic_keys():
        lam, mu = sc.plane(key)
        _, q2, _ = conic_of_plane(sc.f, sc.g, lam, mu)
        conic = restrict_to_plane(q2, lam, mu)
        out[key] = ConicReport(key, lam, mu, conic, rank(_const_gram(conic, PLANE_VARS)))
    return out


def check_conics(sc: Scenario216) -> list[CheckReport]:
    search = find_invariant_planes(sc.f, sc.g)
    found = sorted(f"({format_cyclotomic(l)}:{format_cyclotomic(m)})" for l, m in search.roots)
    expected = sorted(f"({format_cyclotomic(l)}:{format_cyclotomic(m)})" for l, m in (sc.plane(k) for k in sc.conic_keys()))
    reports = [
        compare("conics-count", SCENARIO, sc.data["plane_count"], len(search.roots),
                "V4 contains exactly four G-invariant conics",
                detail=f"gcd of minors on l=1: {search.minors_gcd}; l=0 root: {search.at_infinity}"),
        compare("conics-parameters", SCENARIO, expected, found, "planes Pi_1..Pi_4 of the invariant pencil"),
    ]
    conics = invariant_conics(sc)
    ranks = {k: c.gram_rank for k, c in conics.items()}
    reports.append(compare("conics-smooth", SCENARIO, {k: 3 for k in ranks}, ranks,
                           "each C_i is a smooth conic (Gram rank 3)"))
    pair_ranks = {}
    for a, b in itertools.combinations(sc.conic_keys(), 2):
        stacked = plane_forms(*sc.plane(a)).vstack(plane_forms(*sc.plane(b)))
        pair_ranks[f"{a}-{b}"] = rank(stacked)
    reports.append(compare("conics-disjoint", SCENARIO, {k: 6 for k in pair_ranks}, pair_ranks,
                           "conics C_1, C_2, C_3, C_4 are pairwise disjoint"))
    lam, mu = sc.plane("generic_plane")
    verdict = proportionality(restrict_to_plane(sc.f, lam, mu), restrict_to_plane(sc.g, lam, mu))
    reports.append(compare("conics-generic-rejected", SCENARIO, "not proportional",
                           "not proportional" if verdict is None else str(verdict),
                           "a generic plane of the pencil meets V4 in points"))
    return reports


# -- linear relations -----------------------------------------------------------

def relation_residual(sc: Scenario216, terms: dict) -> MultiPoly:
    acc = MultiPoly.zero(sc.vars)
    for name, coeff in terms.items():
        acc = acc + sc.forms[name].scale(parse_scalar(coeff))
    return acc


def check_relations(sc: Scenario216) -> list[CheckReport]:
    reports = []
    for rel in sc.data["relations"]:
        res = relation_residual(sc, rel["terms"])
        reports.append(compare(f"relation-{rel['id']}", SCENARIO, "0", _poly_str(res), rel["anchor"]))
    # negative control: shift one coefficient by 1
    rel = sc.data["relations"][0]
    terms = dict(rel["terms"])
    k = sorted(terms)[0]
    terms[k] = format_cyclotomic(parse_scalar(terms[k]) + ONE)
    res = relation_residual(sc, terms)
    reports.append(CheckReport("relation-negative-control", SCENARIO, PASS if not res.is_zero() else FAIL,
                               "nonzero residual", _poly_str(res), "perturbed coefficient is detected"))
    return reports


# -- discriminant curves ------------------------------------------------------------

P_VARS = ("p0", "p1", "p2")
SPACE_VARS = ("s", "u0", "u1", "u2")


def discriminant_quartic(f: MultiPoly, g: MultiPoly, lam, mu) -> MultiPoly:
    """Discriminant of the conic bundle obtained by projecting V4 from ``Pi(l:m)``.

    The fiber over ``p`` lives in the 3-space spanned by the plane and a lift
    ``e(p)`` of ``p``: ``x = s e(p) + B u``.  The pencil member vanishing on
    the plane restricts to ``s * l(s, u)``; the residual conic is
    ``{l = 0} cap {q2 = 0}``, whose degeneracy is the bordered determinant
    ``det [[Gram(q2), c], [c^T, 0]]``.
    """
    lam, mu = Cyclotomic.coerce(lam), Cyclotomic.coerce(mu)
    B = plane_basis(lam, mu)
    ps = MultiPoly.gens(P_VARS)
    zero = MultiPoly.zero(P_VARS)
    lift = [ps[k] for k in range(3)] + [zero] * 3 if lam else [zero] * 3 + [ps[k] for k in range(3)]
    rows = []
    for i in range(6):
        rows.append([lift[i]] + [MultiPoly.constant(B.rows[i][j], P_VARS) for j in range(3)])
    param = Matrix(rows, coerce=None)
    q1, q2, _ = conic_of_plane(f, g, lam, mu)
    allv = SPACE_VARS + P_VARS
    Q1 = restrict_to_subspace(q1, param, SPACE_VARS).with_variables(allv)
    Q2 = restrict_to_subspace(q2, param, SPACE_VARS).with_variables(allv)
    s = MultiPoly.var("s", allv)
    ell = Q1.exact_div(s)
    c = [ell.diff(v) for v in SPACE_VARS]
    G = quadratic_gram(Q2, SPACE_VARS)
    zero_all = MultiPoly.zero(allv)
    bordered = [list(G.rows[i]) + [c[i]] for i in range(4)] + [c + [zero_all]]
    D = det(Matrix(bordered, coerce=None))
    return D.with_variables(P_VARS)


def _rename(p: MultiPoly, names: Sequence[str]) -> MultiPoly:
    return MultiPoly(tuple(names), dict(p.terms))


def check_discriminants(sc: Scenario216) -> list[CheckReport]:
    reports = []
    for case, info in sorted(sc.data["discriminants"].items()):
        lam, mu = sc.plane(info["conic"])
        expected = parse_poly(info["quartic"], ("x0", "x1", "x2"))
        D = _rename(discriminant_quartic(sc.f, sc.g, lam, mu), ("x0", "x1", "x2"))
        c = proportionality(D, expected)
        matches = isinstance(c, Cyclotomic)
        smooth = plane_curve_smoothness(expected) if matches else None
        status = PASS if matches and smooth.smooth else FAIL
        reports.append(CheckReport(
            f"discriminant-{case}", SCENARIO, status,
            f"{info['quartic']} (up to scalar), smooth",
            f"{_poly_str(D)}; scalar {format_cyclotomic(c) if matches else 'none'}; "
            f"smooth={smooth.smooth if smooth else 'n/a'}",
            f"Delta_{case} quartic and its smoothness",
            detail=smooth.summary() if smooth else ""))
    reports.extend(check_tau_transport(sc))
    return reports


def check_tau_transport(sc: Scenario216) -> list[CheckReport]:
    """``tau`` fixes ``f`` and ``g`` and carries Pi_1 to Pi_2, Pi_3 to Pi_4."""
    fixes = substitute_linear(sc.f, sc.tau) == sc.f and substitute_linear(sc.g, sc.tau) == sc.g
    reports = []
    for src, dst, case in (("C1", "C2", 2), ("C3", "C4", 4)):
        image = plane_forms(*sc.plane(src)) @ sc.tau
        same = rank(image.vstack(plane_forms(*sc.plane(dst)))) == 3
        ok = fixes and same
        reports.append(CheckReport(
            f"discriminant-{case}-transport", SCENARIO, PASS if ok else FAIL,
            f"tau fixes V4 and maps Pi_{int(src[1])} to Pi_{case}",
            f"tau fixes f, g: {fixes}; plane mapped: {same}",
            f"Delta_{case} is isomorphic to Delta_{int(src[1])}"))
    return reports


# -- incidence table ---------------------------------------------------------------

def _small_values() -> list[Cyclotomic]:
    vals = [ZERO]
    for base in (ONE, W, W * W, ONE + W):
        vals.extend([base, -base])
    return vals


def rational_point(conic: MultiPoly, skip: int = 0) -> list[Cyclotomic]:
    """A point of a plane conic with small Q(w) coordinates found by enumeration."""
    vals = _small_values()
    seen = 0
    for pt in itertools.product(vals, repeat=3):
        if not any(pt):
            continue
        if conic.evaluate(dict(zip(PLANE_VARS, pt))) == ZERO:
            if seen == skip:
                return list(pt)
            seen += 1
    raise ArithmeticError("no small point found on the conic")


def _bil(A: Matrix, x: Sequence, y: Sequence):
    acc = ZERO
    for i in range(len(x)):
        for j in range(len(y)):
            if A.rows[i][j]:
                acc = acc + A.rows[i][j] * x[i] * y[j]
    return acc


def conic_parametrization(conic: MultiPoly, point: Sequence[Cyclotomic], d0: Sequence, d1: Sequence) -> list[UPoly]:
    """``X(t) = Q(d) p - 2 B(p, d) d`` with ``d = d0 + t d1``: the second intersection of lines through ``p``."""
    A = _const_gram(conic, PLANE_VARS)
    d = [UPoly([a, b]) for a, b in zip(d0, d1)]
    p = [UPoly.constant(x) for x in point]
    Qd = UPoly()
    for i in range(3):
        for j in range(3):
            if A.rows[i][j]:
                Qd = Qd + d[i] * d[j] * A.rows[i][j]
    Bpd = UPoly()
    for i in range(3):
        for j in range(3):
            if A.rows[i][j]:
                Bpd = Bpd + d[j] * (A.rows[i][j] * point[i])
    return [Qd * p[k] - Bpd * d[k] * Cyclotomic(2) for k in range(3)]


def _lift_curve(B: Matrix, X: Sequence[UPoly]) -> list[UPoly]:
    out = []
    for row in B.rows:
        acc = UPoly()
        for c, x in zip(row, X):
            if c:
                acc = acc + x * c
        out.append(acc)
    return out


def _grad_on_curve(A: Matrix, X: Sequence[UPoly]) -> list[RatFunc]:
    out = []
    for row in A.rows:
        acc = UPoly()
        for c, x in zip(row, X):
            if c:
                acc = acc + x * (c * 2)
        out.append(RatFunc(acc))
    return out


def _rat_matrix(rows) -> Matrix:
    return Matrix([[RatFunc.coerce(x) for x in r] for r in rows], coerce=None)


def classify_along_conic(h: MultiPoly, f: MultiPoly, g: MultiPoly, lam, mu, X6: Sequence[UPoly]) -> str:
    """No / Yes / Node / Cusp for the surface ``{h = 0} cap V4`` along the conic traced by ``X6``."""
    fr, gr, hr = (restrict_to_plane(p, lam, mu) for p in (f, g, h))
    _, q2, _ = conic_of_plane(f, g, lam, mu)
    c = proportionality(hr, restrict_to_plane(q2, lam, mu))
    if c is None:
        return "No"
    Af, Ag, Ah = (_const_gram(p, p.variables) for p in (f, g, h))
    df, dg, dh = (_grad_on_curve(A, X6) for A in (Af, Ag, Ah))
    if rank(_rat_matrix([df, dg, dh])) == 3:
        return "Yes"
    # dh = a df + b dg over Q(w)(t)
    M = _rat_matrix([[df[i], dg[i], dh[i]] for i in range(6)])
    kern = nullspace(M)
    if len(kern) != 1 or not kern[0][2]:
        raise ArithmeticError("df and dg are dependent along the conic")
    v = kern[0]
    a, b = -v[0] / v[2], -v[1] / v[2]
    H = _rat_matrix([[RatFunc.coerce(Ah.rows[i][j]) - a * Af.rows[i][j] - b * Ag.rows[i][j]
                      for j in range(6)] for i in range(6)])
    T = nullspace(_rat_matrix([df, dg]))
    if len(T) != 4:
        raise ArithmeticError("V4 is singular along the conic")
    Tm = Matrix([list(col) for col in zip(*T)], coerce=None)
    restricted = Tm.transpose() @ H @ Tm
    r = rank(restricted)
    return {2: "Node", 1: "Cusp"}.get(r, f"rank-{r}")


def incidence_table(sc: Scenario216, variant: int = 0) -> dict[str, list[str]]:
    """Verdict for every (conic, surface) pair; ``variant`` selects another point and pencil of lines."""
    cols = sc.data["incidence"]["columns"]
    conics = invariant_conics(sc)
    dirs = [([ONE, ZERO, ZERO], [ZERO, ONE, ZERO]), ([ZERO, ONE, ONE], [ONE, ZERO, W]),
            ([ZERO, ZERO, ONE], [ONE, ONE, ZERO])]
    out = {}
    for key in sc.conic_keys():
        cr = conics[key]
        pt = rational_point(cr.conic, skip=variant)
        d0, d1 = dirs[variant % len(dirs)]
        X = conic_parametrization(cr.conic, pt, d0, d1)
        if all(x.degree <= 0 for x in X):
            raise ArithmeticError("degenerate conic parametrization")
        X6 = _lift_curve(plane_basis(cr.lam, cr.mu), X)
        out[key] = [classify_along_conic(sc.forms[c], sc.f, sc.g, cr.lam, cr.mu, X6) for c in cols]
    return out


def check_incidence(sc: Scenario216) -> list[CheckReport]:
    expected = sc.data["incidence"]["rows"]
    cols = sc.data["incidence"]["columns"]
    got = incidence_table(sc)
    bad = [f"({cols[j]}, {k}): {got[k][j]} vs {expected[k][j]}"
           for k in sorted(expected) for j in range(len(cols)) if got[k][j] != expected[k][j]]
    render = lambda t: "; ".join(f"{k}: {' '.join(t[k])}" for k in sorted(t))
    reports = [CheckReport("incidence-table", SCENARIO, PASS if not bad else FAIL, render(expected), render(got),
                           "surfaces F_{j,i} along conics C_k: No/Yes/Node/Cusp",
                           detail="; ".join(bad))]
    alt = incidence_table(sc, variant=1)
    reports.append(compare("incidence-independence", SCENARIO, render(got), render(alt),
                           "verdicts do not depend on the conic parametrization"))
    return reports


# -- V4 smoothness ------------------------------------------------------------------

def pencil_discriminant(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    lam, mu = MultiPoly.gens(("lam", "mu"))
    Af, Ag = _const_gram(f, f.variables), _const_gram(g, g.variables)
    M = Matrix([[lam.scale(Af.rows[i][j]) + mu.scale(Ag.rows[i][j]) for j in range(6)] for i in range(6)],
               coerce=None)
    return det(M)


def check_v4_smooth(sc: Scenario216) -> CheckReport:
    """A pencil of quadrics in P^5 has a smooth base locus iff ``det(l A + m B)`` has six distinct roots."""
    D = pencil_discriminant(sc.f, sc.g).with_variables(("lam", "mu"))
    u = UPoly.from_poly(D.subs({"lam": 1}, ("mu",)), "mu")
    distinct = upoly_gcd(u, u.deriv()).degree == 0
    # root at l = 0 counts with multiplicity 6 - deg u
    inf_mult = 6 - u.degree
    ok = D.total_degree() == 6 and distinct and inf_mult <= 1
    return CheckReport("v4-smooth", SCENARIO, PASS if ok else FAIL, "binary sextic with distinct roots",
                       f"{_poly_str(D)}; squarefree on l=1: {distinct}; multiplicity at l=0: {inf_mult}",
                       "V4 is a smooth complete intersection of two quadrics")


# -- nets and multiplicities ----------------------------------------------------------

def _line_images(sc: Scenario216, key: str) -> list[MultiPoly]:
    return [parse_poly(t, ("L", "M")) for t in sc.data["lines"][key]]


def vanishes_on_conic(sc: Scenario216, h: MultiPoly, conic_key: str) -> bool:
    lam, mu = sc.plane(conic_key)
    _, q2, _ = conic_of_plane(sc.f, sc.g, lam, mu)
    return proportionality(restrict_to_plane(h, lam, mu), restrict_to_plane(q2, lam, mu)) is not None


def vanishes_on_line(sc: Scenario216, h: MultiPoly, line_key: str) -> bool:
    return h.compose(_line_images(sc, line_key), ("L", "M")).is_zero()


def net_generators(sc: Scenario216, key: str) -> tuple[list[MultiPoly], list[int]]:
    """Parsed generators and the indices of the distinct ones."""
    gens = [parse_poly(t, sc.vars) for t in sc.data["nets"][key]["generators"]]
    distinct = []
    for i, p in enumerate(gens):
        if not any(proportionality(p, gens[j]) not in (None,) for j in distinct):
            distinct.append(i)
    return gens, distinct


def _on_line(sc: Scenario216, pt: Sequence[Cyclotomic], key: str) -> bool:
    """Whether ``pt`` lies on the line spanned by the parametrization at (1:0) and (0:1)."""
    ims = _line_images(sc, key)
    a = [im.evaluate({"L": 1, "M": 0}) for im in ims]
    b = [im.evaluate({"L": 0, "M": 1}) for im in ims]
    return rank(Matrix([a, b, list(pt)], coerce=None)) < 3


def _point_on_conic(sc: Scenario216, key: str, skip: int = 0) -> list[Cyclotomic]:
    """A point of the conic off every line of the scenario, from the rational parametrization."""
    lam, mu = sc.plane(key)
    _, q2, _ = conic_of_plane(sc.f, sc.g, lam, mu)
    conic = restrict_to_plane(q2, lam, mu)
    X = conic_parametrization(conic, rational_point(conic), [ONE, ZERO, ZERO], [ZERO, ONE, ZERO])
    B = plane_basis(lam, mu)
    seen = 0
    for k in itertools.count(2):
        t = [x(Cyclotomic(k)) for x in X]
        if not any(t):
            continue
        pt = B.apply(t)
        if any(_on_line(sc, pt, ln) for ln in sc.data["lines"]):
            continue
        if seen == skip:
            return pt
        seen += 1


def _conic_tangent(sc: Scenario216, key: str, point6: Sequence[Cyclotomic]) -> list[Cyclotomic]:
    """A tangent vector to the conic at the point (in C^6)."""
    lam, mu = sc.plane(key)
    B = plane_basis(lam, mu)
    _, q2, _ = conic_of_plane(sc.f, sc.g, lam, mu)
    A = _const_gram(restrict_to_plane(q2, lam, mu), PLANE_VARS)
    # preimage of the point in plane coordinates
    sol = nullspace(Matrix([list(r) + [-x] for r, x in zip(B.rows, point6)], coerce=None))
    t = [c / sol[0][3] for c in sol[0][:3]]
    grad = A.apply(t)
    # tangent directions: kernel of grad, not proportional to t
    for v in nullspace(Matrix([grad], coerce=None)):
        if rank(Matrix([v, t], coerce=None)) == 2:
            return B.apply(v)
    raise ArithmeticError("no tangent direction")


def local_multiplicity(sc: Scenario216, p1: MultiPoly, p2: MultiPoly, conic_key: str, order: int = 3,
                       skip: int = 0) -> dict:
    """Intersection number at a point of the conic of the two surfaces ``p_i = 0`` on V4,
    inside a slice transversal to the conic.

    Exact as long as it does not exceed ``order``.  The value at a special
    point bounds the value at the generic point of the conic from above.
    """
    P = _point_on_conic(sc, conic_key, skip)
    T = _conic_tangent(sc, conic_key, P)
    a = next(i for i, x in enumerate(P) if x)  # affine chart x_a = 1
    scale = P[a].inv()
    P = [x * scale for x in P]
    # affine tangent: derivative of x/x_a
    Ta = [T[i] - P[i] * T[a] for i in range(6)]
    c = next(i for i in range(6) if i != a and Ta[i])  # slice x_c = P_c
    rest = [i for i in range(6) if i not in (a, c)]
    names = {i: f"y{i}" for i in rest}
    local_vars = tuple(names.values())
    # local coordinates y_i = x_i - P_i on the chart, with x_a = 1 and x_c = P_c
    images = []
    for i in range(6):
        if i in names:
            images.append(MultiPoly.var(names[i], local_vars) + MultiPoly.constant(P[i], local_vars))
        else:
            images.append(MultiPoly.constant(ONE if i == a else P[i], local_vars))
    loc = lambda p: p.compose(images, local_vars)
    F, G = loc(sc.f), loc(sc.g)
    origin = {v: 0 for v in local_vars}
    jac = [[F.diff(names[i]).evaluate(origin) for i in rest],
           [G.diff(names[i]).evaluate(origin) for i in rest]]
    pair = next(((i, j) for i, j in itertools.combinations(range(4), 2)
                 if jac[0][i] * jac[1][j] - jac[0][j] * jac[1][i]), None)
    if pair is None:
        raise ArithmeticError("V4 is singular at the chosen point")
    unknowns = [names[rest[k]] for k in pair]
    params = [names[rest[k]] for k in range(4) if k not in pair]
    sol = implicit_series([F, G], unknowns, params, order)
    P1 = loc(p1).with_variables(tuple(params) + tuple(unknowns)).subs(sol, tuple(params)).truncate(order)
    P2 = loc(p2).with_variables(tuple(params) + tuple(unknowns)).subs(sol, tuple(params)).truncate(order)
    value = intersection_number(P1, P2, params[0], params[1])
    return {"value": value, "exact": value <= order, "point": P, "slice": c, "chart": a}


def check_nets(sc: Scenario216) -> list[CheckReport]:
    reports = []
    # the lines lie on V4
    on_v4 = {k: vanishes_on_line(sc, sc.f, k) and vanishes_on_line(sc, sc.g, k) for k in sorted(sc.data["lines"])}
    reports.append(compare("lines-on-V4", SCENARIO, {k: True for k in on_v4}, on_v4,
                           "lines in the base loci lie on V4"))
    bound = sc.data["multiplicity_bound"]
    for key in sorted(sc.data["nets"]):
        net = sc.data["nets"][key]
        gens, distinct = net_generators(sc, key)
        contain = {}
        for i, p in enumerate(gens):
            for cn in net["conics"]:
                contain[f"g{i + 1}>{cn}"] = vanishes_on_conic(sc, p, cn)
            for ln in net["lines"]:
                contain[f"g{i + 1}>{ln}"] = vanishes_on_line(sc, p, ln)
        reports.append(compare(f"net-{key}-base-locus", SCENARIO, {k: True for k in contain}, contain,
                               "conics and lines lie in the base locus of the net"))
        if len(distinct) < len(gens):
            reports.append(CheckReport(
                f"net-{key}-duplicate", SCENARIO, FLAGGED, f"{len(gens)} distinct generators",
                f"{len(distinct)} distinct generators", "second net for i=3 as printed",
                detail="duplicated generator dropped; remaining generators used"))
        p1, p2 = gens[distinct[0]], gens[distinct[1]]
        res = local_multiplicity(sc, p1, p2, net["along"])
        ok = res["exact"] and res["value"] < bound
        reports.append(CheckReport(
            f"net-{key}-multiplicity", SCENARIO, PASS if ok else FAIL, f"< {bound}", str(res["value"]),
            f"(M_1 . M_2) along {net['along']} is below {bound}",
            detail=f"value at a point of the conic off the lines (bounds the generic value); "
                   f"chart x{res['chart']}=1, slice x{res['slice']}"))
    return reports


# -- intersection chains -----------------------------------------------------------------

@dataclass
class Chain216:
    X: chow.ChowThreefold
    VZ: chow.ChowThreefold
    VC: chow.ChowThreefold
    Y: chow.ChowThreefold
    Zt_pairings: dict
    nZ: int
    nC: int
    minusK_V_dot_Zt: Fraction


def build_chain(sc: Scenario216) -> Chain216:
    ch = sc.data["chains"]
    v4 = ch["V4"]
    V4 = chow.complete_intersection(v4["dims"], v4["degrees"], v4["names"], name="V4")
    X = chow.blowup_curve(V4, "C", ch["conic"]["genus"], ch["conic"]["pairings"], exceptional="E", name="X")
    VZ = chow.blowup_curve(X, "Z", ch["Z"]["genus"], ch["Z"]["pairings"], exceptional="F", name="V_Z")
    VC = chow.blowup_curve(X, "Ci", ch["Ci"]["genus"], ch["Ci"]["pairings"], exceptional="F", name="V")
    e_dot = lambda key: Fraction(ch[key]["pairings"]["E"])
    nZ = ruled.exceptional_type(ch["Z"]["self_on_E"], e_dot("Z"))
    nC = ruled.exceptional_type(ch["Ci"]["self_on_E"], e_dot("Ci"))
    s_coeff, f_coeff = ch["Zt_class_on_F"]
    Zt = ruled.RuledClass(nC, s_coeff, f_coeff)
    pair = {}
    for name in VC.basis:
        r = ruled.restrict_to_exceptional(VC, VC.cls(name), "F", nC)
        pair[name] = ruled.ruled_pair(r, Zt)
    mK = ruled.restrict_to_exceptional(VC, VC.anticanonical(), "F", nC)
    Y = chow.blowup_curve(VC, "Zt", 0, pair, exceptional="R", name="Y")
    return Chain216(X, VZ, VC, Y, pair, nZ, nC, Fraction(chow.numeric(ruled.ruled_pair(mK, Zt))))


def check_chain(sc: Scenario216) -> list[CheckReport]:
    ch = build_chain(sc)
    exp = sc.data["chains"]["expected"]
    cube = lambda ring, cls: chow.numeric(ring.cube(cls))
    reports = [
        compare("chain-X-cube", SCENARIO, Fraction(exp["minusK_X_cube"]), cube(ch.X, ch.X.anticanonical()),
                "(-K_{X_i})^3 = 22"),
        compare("chain-E-cube", SCENARIO, Fraction(exp["E_cube"]), cube(ch.X, ch.X.cls("E")),
                "E_i^3 = 2 + K_{V4}.C_i = -2"),
        compare("chain-Z-F-cube", SCENARIO, Fraction(exp["F_cube_Z"]), cube(ch.VZ, ch.VZ.cls("F")),
                "F^3 = -4 for the blow-up of Z_i"),
        compare("chain-Z-F8", SCENARIO, exp["F8_n"], ch.nZ, "F is F_8 for the blow-up of Z_i"),
        compare("chain-C-F-cube", SCENARIO, Fraction(exp["F_cube_C"]), cube(ch.VC, ch.VC.cls("F")), "F^3 = -2"),
        compare("chain-V-cube", SCENARIO, Fraction(exp["minusK_V_cube"]), cube(ch.VC, ch.VC.anticanonical()),
                "-K_V^3 = 12"),
        compare("chain-V-dot-Zt", SCENARIO, Fraction(exp["minusK_V_dot_Zt"]), ch.minusK_V_dot_Zt,
                "-K_V . Z~ = 4 on F_2"),
        compare("chain-Y-cube", SCENARIO, Fraction(exp["minusK_Y_cube"]), cube(ch.Y, ch.Y.anticanonical()),
                "-K_Y^3 = 2"),
    ]
    params = ("m", "mt")
    D = ch.Y.parse_class(sc.data["chains"]["D_hat"], params)
    K = ch.Y.anticanonical()
    got = ch.Y.triple(K, K, D).with_variables(params)
    want = parse_poly(exp["minusK_Y_sq_D"], params)
    reports.append(compare("chain-Y-D-hat", SCENARIO, _poly_str(want), _poly_str(got), "-K_Y^2 . D = 14 - 6(m + mt)"))
    # F8 class arithmetic: (m s + (2m+6) f) . s
    m = MultiPoly.var("m", ("m",))
    omega = ruled.RuledClass(8, m, m.scale(2) + MultiPoly.constant(6, ("m",)))
    val = ruled.ruled_pair(omega, ruled.RuledClass(8, 1, 0))
    reports.append(compare("chain-F8-pairing", SCENARIO, "-6*m + 6", _poly_str(val.with_variables(("m",))),
                           "Omega ~ m s_F + (2m+6) f_F on F_8"))
    h0V = chow.riemann_roch_anticanonical(cube(ch.VC, ch.VC.anticanonical()))
    s, fcoef = ch_class_on_F(ch)
    h0F = ruled.h0_ruled(ch.nC, s, fcoef)
    reports.append(compare("chain-h0-ladder", SCENARIO, f"{exp['h0_minusK_V']} = 1 + {exp['h0_F_s4f']}",
                           f"{h0V} = 1 + {h0F}" if h0V == 1 + h0F else f"{h0V} != 1 + {h0F}",
                           "h0(-K_V) = 9 and h0(O_F(s_F + 4 f_F)) = 8",
                           detail=f"h0 on F_{ch.nC}: {' + '.join(str(max(0, fcoef - k * ch.nC + 1)) for k in range(s + 1))}"))
    return reports


def ch_class_on_F(ch: Chain216) -> tuple[int, int]:
    r = ruled.restrict_to_exceptional(ch.VC, ch.VC.anticanonical(), "F", ch.nC)
    return int(chow.numeric(r.s)), int(chow.numeric(r.f))


# -- representations and orbits -------------------------------------------------------------

def sl23_group(sc: Scenario216) -> tuple[MatrixGroup, list[Matrix]]:
    I = Matrix.parse(sc.data["sl23"]["I"])
    J = Matrix.parse(sc.data["sl23"]["J"])
    C = (Matrix.identity(2) * Cyclotomic(-1) + I + J + I @ J) * Cyclotomic(Fraction(1, 2))
    gens = [I, J, C]
    return MatrixGroup(gens, name="SL(2,3)"), gens


def one_dim_summands(sc: Scenario216) -> dict[str, int]:
    G, gens = sl23_group(sc)
    W2 = Representation(G, gens)
    rep = tensor_rep(W2, sym_power_rep(W2, 3))
    out = {}
    for chi in linear_characters(G, ROOTS_6):
        label = ",".join(format_cyclotomic(v) for v in chi.values)
        out[label] = character_eigenspace_dim(rep, chi)
    return out


def check_rep(sc: Scenario216) -> list[CheckReport]:
    G, _ = sl23_group(sc)
    split = one_dim_summands(sc)
    total = sum(split.values())
    plane_gens = [Matrix([r[3:] for r in m.rows[3:]], coerce=None) for m in sc.generators.values()]
    on_plane = MatrixGroup(plane_gens, name="A4 on U3")
    orbit = min_orbit_length_on_P1(on_plane)
    return [
        compare("rep-sl23-order", SCENARIO, sc.data["sl23"]["order"], G.order, "2.G is SL(2,F_3)"),
        compare("rep-summands", SCENARIO, sc.data["sl23"]["summands"], total,
                "two one-dimensional subrepresentations of W2 x Sym^3 W2",
                detail="per character " + "; ".join(f"({k}): {v}" for k, v in sorted(split.items()))),
        compare("orbit-min-length", SCENARIO, sc.data["sl23"]["min_orbit"], orbit,
                "C_i has no G-orbits of lengths 1, 2, 3"),
    ]


# -- driver -------------------------------------------------------------------------------------

CHECKS = {
    "group": check_group,
    "characters": check_characters,
    "conics": check_conics,
    "relations": check_relations,
    "discriminants": check_discriminants,
    "incidence": check_incidence,
    "v4": check_v4_smooth,
    "nets": check_nets,
    "chain": check_chain,
    "rep": check_rep,
}


def run_all_216(sc: Scenario216 | None = None, only: Sequence[str] | None = None) -> list[CheckReport]:
    sc = sc or Scenario216()
    reports = []
    for name, fn in CHECKS.items():
        if only is not None and name not in only:
            continue
        reports.extend(run_check(lambda fn=fn: fn(sc)))
    return sorted(reports, key=lambda r: r.checkId)
