"""Randomized laws, 1000 examples each.

Run by the acceptance suite; ``CALLS`` counts the examples each law saw.
"""
from collections import Counter
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from fanocheck.chow import blowup_curve, complete_intersection, numeric
from fanocheck.exactnum import Cyclotomic, format_cyclotomic, parse_cyclotomic
from fanocheck.polylin import Matrix, MultiPoly, format_poly, nullspace, parse_poly, rank
from fanocheck.ruled import ChainState, CurveRec, chain_step

N = 1000
CALLS: Counter = Counter()
cfg = settings(max_examples=N, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fractions = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 12))
cyclo = st.builds(Cyclotomic, fractions, fractions)
nonzero_cyclo = cyclo.filter(bool)


# -- field axioms in Q(w) ----------------------------------------------------------------

@cfg
@given(cyclo, cyclo, cyclo)
def ring_axioms(x, y, z):
    CALLS["ring_axioms"] += 1
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + 0 == x and x * 1 == x and x - x == 0


@cfg
@given(nonzero_cyclo, cyclo)
def inverses_and_norm(x, y):
    CALLS["inverses_and_norm"] += 1
    assert x * x.inv() == 1
    assert (y / x) * x == y
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() > 0


# -- printer / parser round-trips -----------------------------------------------------

@cfg
@given(cyclo)
def scalar_round_trip(x):
    CALLS["scalar_round_trip"] += 1
    assert parse_cyclotomic(format_cyclotomic(x)) == x


VARS = ("x0", "x1", "x2")
monomials = st.tuples(*[st.integers(0, 3)] * 3)
coeffs = st.builds(Cyclotomic, st.builds(Fraction, st.integers(-9, 9), st.sampled_from([1, 2, 3])),
                   st.integers(-3, 3))
polys = st.dictionaries(monomials, coeffs, max_size=4).map(lambda t: MultiPoly(VARS, t))


@cfg
@given(polys)
def poly_round_trip(p):
    CALLS["poly_round_trip"] += 1
    assert parse_poly(format_poly(p), VARS) == p
    assert parse_poly(str(p), VARS) == p


@cfg
@given(polys, polys)
def poly_ring_laws(p, q):
    CALLS["poly_ring_laws"] += 1
    assert p * q == q * p
    assert (p + q) - q == p
    if not q.is_zero():
        assert (p * q).exact_div(q) == p


# -- rank-nullity over Q(w) -------------------------------------------------------------

small = st.builds(Cyclotomic, st.integers(-3, 3), st.integers(-2, 2))


@st.composite
def matrices(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 5))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    # sometimes force dependencies
    if r > 1 and draw(st.booleans()):
        k = draw(small)
        rows[-1] = [a * k + b for a, b in zip(rows[0], rows[1 % r])]
    return Matrix(rows)


@cfg
@given(matrices())
def rank_nullity(m):
    CALLS["rank_nullity"] += 1
    ns = nullspace(m)
    assert rank(m) + len(ns) == m.shape[1]
    for v in ns:
        assert all(x == 0 for x in m.apply(v))
    assert rank(m) == rank(m.transpose())


# -- intersection tensors ---------------------------------------------------------------

P1P1P2 = complete_intersection([1, 1, 2], [[1, 1, 1]], names=["h1", "h2", "hL"])
coords = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


def _cls(ring, cs):
    out = ring.cls(ring.basis[0]) * 0
    for name, c in zip(ring.basis, cs):
        out = out + ring.cls(name) * c
    return out


@cfg
@given(coords, coords, coords)
def tensor_symmetry(a, b, c):
    CALLS["tensor_symmetry"] += 1
    A, B, C = (_cls(P1P1P2, v) for v in (a, b, c))
    t = P1P1P2.triple
    v = t(A, B, C)
    assert v == t(B, A, C) == t(C, B, A) == t(A, C, B) == t(B, C, A) == t(C, A, B)


@cfg
@given(coords, coords, coords, st.lists(st.integers(0, 5), min_size=3, max_size=3), st.integers(0, 2))
def projection_formula(a, b, c, pairings, genus):
    CALLS["projection_formula"] += 1
    pair = dict(zip(P1P1P2.basis, pairings))
    Y = blowup_curve(P1P1P2, "Z", genus=genus, pairings=pair, exceptional="E")
    A, B, C = (_cls(P1P1P2, v) for v in (a, b, c))
    fA, fB, fC = (x.pullback(Y) for x in (A, B, C))
    E = Y.cls("E")
    assert numeric(Y.triple(fA, fB, fC)) == numeric(P1P1P2.triple(A, B, C))
    assert numeric(Y.triple(fA, fB, E)) == 0
    # f*A . E^2 = -(A.Z)
    AZ = sum(ci * pi for ci, pi in zip(a, pairings))
    assert numeric(Y.triple(fA, E, E)) == -AZ


# -- chain step law ------------------------------------------------------------------------

@cfg
@given(st.integers(1, 200), st.integers(0, 200), st.booleans())
def chain_step_law(n, g, plus):
    CALLS["chain_step_law"] += 1
    # +n curve has partner square <= 0, -n curve has partner square > 0
    gamma = -g if plus else g + 1
    curves = (CurveRec(n if plus else -n, "A", gamma), CurveRec(-n if plus else n, "B", 1 if plus else 0))
    st_ = ChainState(n, curves)
    st_.validate()
    nxt = chain_step(st_, 0)
    assert nxt.n == n + abs(gamma)
    nxt.validate()
    assert Fraction(nxt.n) > 0


LAWS = [ring_axioms, inverses_and_norm, scalar_round_trip, poly_round_trip, poly_ring_laws, rank_nullity,
        tensor_symmetry, projection_formula, chain_step_law]
