import random
from fractions import Fraction

import pytest
import sympy

from fanocheck.exactnum import Cyclotomic
from fanocheck.polylin import (
    CommonComponent,
    Matrix,
    MultiPoly,
    PolySyntaxError,
    det,
    format_poly,
    implicit_series,
    intersection_number,
    nullspace,
    parse_poly,
    plane_curve_smoothness,
    rank,
    resultant,
)

XYZ = ("x", "y", "z")
_sx, _sy, _sz = sympy.symbols("x y z")


def to_sympy(p: MultiPoly):
    return sympy.sympify(format_poly(p).replace("^", "**"), locals={"x": _sx, "y": _sy, "z": _sz})


def random_poly(rng, variables, degree, terms=4):
    p = MultiPoly.zero(variables)
    for _ in range(terms):
        exps = [rng.randint(0, degree) for _ in variables]
        mono = MultiPoly.constant(Fraction(rng.randint(-5, 5), rng.randint(1, 3)), variables)
        for v, e in zip(variables, exps):
            mono = mono * MultiPoly.var(v, variables) ** e
        p = p + mono
    return p


def test_parse_basic():
    p = parse_poly("(x+y)^2 - 2*x*y", ("x", "y"))
    assert p == parse_poly("x^2+y^2", ("x", "y"))
    assert parse_poly("(w+1)*x", ("x",)).monomial_coefficient(x=1) == Cyclotomic(1, 1)
    with pytest.raises(PolySyntaxError):
        parse_poly("x+*y", ("x", "y"))


@pytest.mark.parametrize("seed", range(6))
def test_resultant_matches_sympy(seed):
    rng = random.Random(seed)
    p = random_poly(rng, ("x", "y"), 3)
    q = random_poly(rng, ("x", "y"), 2)
    if p.degree("x") < 1 or q.degree("x") < 1:
        pytest.skip("degenerate draw")
    ours = to_sympy(resultant(p, q, "x"))
    ref = sympy.resultant(to_sympy(p), to_sympy(q), _sx)
    assert sympy.expand(ours - ref) == 0


@pytest.mark.parametrize("seed", range(6))
def test_determinant_and_rank_match_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 5)
    rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
    if seed % 2:
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    m = Matrix(rows)
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert det(m) == Cyclotomic(Fraction(str(ref.det())))
    assert rank(m) == ref.rank()
    for v in nullspace(m):
        assert all(c == 0 for c in m.apply(v))


def test_symbolic_determinant():
    a, b = MultiPoly.gens(("a", "b"))
    m = Matrix([[a, b], [b, a]], coerce=None)
    assert det(m) == a * a - b * b


def _sympy_smooth(expr) -> bool:
    """Smooth iff the partials have no common zero in any affine chart."""
    parts = [sympy.diff(expr, v) for v in (_sx, _sy, _sz)]
    for c in (_sx, _sy, _sz):
        rest = [v for v in (_sx, _sy, _sz) if v != c]
        gb = sympy.groebner([p.subs(c, 1) for p in parts], *rest, order="grevlex")
        if list(gb.exprs) != [1]:
            return False
    return True


@pytest.mark.parametrize("text", [
    "x^4+y^4+z^4",
    "4*x^4-x^2*y^2-x^2*z^2+4*y^4-y^2*z^2+4*z^4",
    "x^3+y^3+z^3",
    "x^2*y^2+y^2*z^2+z^2*x^2",           # singular at the coordinate points
    "y^2*z-x^3-x^2*z",                   # nodal cubic
    "(x^2+y^2-z^2)*(x^2-y^2+2*z^2)",     # reducible quartic
])
def test_smoothness_matches_groebner_oracle(text):
    p = parse_poly(text, XYZ)
    assert plane_curve_smoothness(p, XYZ).smooth == _sympy_smooth(to_sympy(p))


def test_smoothness_over_cyclotomic_field():
    # x^3 + w y^3 + w^2 z^3 is a smooth Fermat-type cubic
    p = parse_poly("x^3+w*y^3+w^2*z^3", XYZ)
    assert plane_curve_smoothness(p, XYZ).smooth
    q = parse_poly("x^2*z+w*y^3", XYZ)
    assert not plane_curve_smoothness(q, XYZ).smooth


@pytest.mark.parametrize("P,Q,expected", [
    ("y-x^2", "y", 2),
    ("y^2-x^3", "y", 3),
    ("y^2-x^3", "x", 2),
    ("y^2-x^3", "x^2-y^3", 4),
    ("y^2-x^2-x^3", "y", 2),
    ("x-1", "y", 0),
    # a classical worked example with answer 14
    ("(x^2+y^2)^2+3*x^2*y-y^3", "(x^2+y^2)^3-4*x^2*y^2", 14),
])
def test_intersection_numbers_textbook(P, Q, expected):
    vs = ("x", "y")
    assert intersection_number(parse_poly(P, vs), parse_poly(Q, vs), "x", "y") == expected


def test_intersection_number_common_component():
    vs = ("x", "y")
    with pytest.raises(CommonComponent):
        intersection_number(parse_poly("x*y", vs), parse_poly("x*(x+y)", vs), "x", "y")


def _sympy_length(P, Q) -> int:
    """dim K[x,y]/(P,Q) from a Groebner basis (global, so the origin must be the only zero)."""
    gb = sympy.groebner([P, Q], _sx, _sy, order="grevlex")
    assert gb.is_zero_dimensional
    assert all(s == {_sx: 0, _sy: 0} for s in sympy.solve([P, Q], [_sx, _sy], dict=True))
    lead = [sympy.Poly(g, _sx, _sy).monoms(order="grevlex")[0] for g in gb.exprs]
    return sum(1 for i in range(40) for j in range(40) if not any(i >= a and j >= b for a, b in lead))


@pytest.mark.parametrize("P,Q", [
    ("y^2-x^3", "x^3+2*y^2"),
    ("x^2*y-y^3+x^3", "x^4+y^4-x*y^3"),
    ("y^3-x^5", "y^3+x^5"),
    ("x^2-y^2+x*y", "x^3+3*y^3"),
])
def test_intersection_number_agrees_with_groebner_length(P, Q):
    vs = ("x", "y")
    p, q = parse_poly(P, vs), parse_poly(Q, vs)
    assert intersection_number(p, q, "x", "y") == _sympy_length(to_sympy(p), to_sympy(q))


def test_implicit_series_solves_to_order():
    # u = t + u^2 has the Catalan series t + t^2 + 2t^3 + 5t^4
    t = MultiPoly.var("t", ("t", "u"))
    u = MultiPoly.var("u", ("t", "u"))
    sol = implicit_series([u - t - u * u], ["u"], ["t"], order=4)
    assert sol["u"] == parse_poly("t+t^2+2*t^3+5*t^4", ("t",))
