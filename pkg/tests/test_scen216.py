import sympy

from fanocheck.polylin import MultiPoly, format_poly, parse_poly
from fanocheck.report import FLAGGED, PASS
from fanocheck.scen216 import (
    discriminant_quartic,
    incidence_table,
    local_multiplicity,
    net_generators,
    pencil_discriminant,
    rational_point,
    relation_residual,
)

_w = sympy.Symbol("w")


def _sym(p: MultiPoly, names):
    syms = {n: sympy.Symbol(n) for n in names}
    syms["w"] = _w
    return sympy.sympify(format_poly(p).replace("^", "**"), locals=syms)


def _reduce_w(expr, gens):
    """Normal form modulo w^2 + w + 1."""
    return sympy.expand(sympy.rem(sympy.expand(expr), _w**2 + _w + 1, _w))


def test_pencil_sextic_against_sympy_hessians(sc216):
    xs = [sympy.Symbol(v) for v in sc216.vars]
    lam, mu = sympy.symbols("lam mu")
    F, G = _sym(sc216.f, sc216.vars), _sym(sc216.g, sc216.vars)
    H = sympy.hessian(lam * F + mu * G, xs) / 2
    ref = _reduce_w(H.det(method="berkowitz"), (lam, mu))
    ours = _sym(pencil_discriminant(sc216.f, sc216.g), ("lam", "mu"))
    assert sympy.expand(ours - ref) == 0
    # squarefree binary sextic: no repeated factor over Q(w) up to the nonzero leading term
    assert sympy.expand(ref - (-sympy.Rational(1, 64) * lam**6 - sympy.Rational(13, 32) * lam**3 * mu**3
                               + sympy.Rational(27, 64) * mu**6)) == 0
    u = sympy.Poly(ref.subs(lam, 1), mu)
    assert sympy.gcd(u, u.diff(mu)).degree() == 0


def test_discriminant_quartic_is_homogeneous_quartic(sc216):
    lam, mu = sc216.plane("C1")
    D = discriminant_quartic(sc216.f, sc216.g, lam, mu)
    assert D.is_homogeneous() and D.total_degree() == 4


def test_rational_points_lie_on_conics(sc216, reports216):
    from fanocheck.scen216 import conic_of_plane, restrict_to_plane

    for key in sc216.conic_keys():
        lam, mu = sc216.plane(key)
        _, q2, _ = conic_of_plane(sc216.f, sc216.g, lam, mu)
        conic = restrict_to_plane(q2, lam, mu)
        for skip in (0, 1):
            pt = rational_point(conic, skip)
            assert conic.evaluate(pt) == 0 and any(pt)


def test_incidence_independent_of_parametrization(sc216):
    assert incidence_table(sc216, 0) == incidence_table(sc216, 1)


def test_negative_control_relation_is_nonzero(sc216):
    assert not relation_residual(sc216, {"f": 1}).is_zero()


def test_duplicate_generators_are_detected(sc216, reports216):
    gens, distinct = net_generators(sc216, "Mp-3")
    assert len(gens) == 3 and len(distinct) == 2
    assert reports216["net-Mp-3-duplicate"].status == FLAGGED


def test_multiplicity_at_a_second_point(sc216):
    gens, distinct = net_generators(sc216, "M-1")
    key = sc216.data["nets"]["M-1"]["along"]
    g1, g2, g3 = (gens[i] for i in distinct)
    # two other members of the net, at a different point of the conic
    out = local_multiplicity(sc216, g1 + g2.scale(2), g2 - g3.scale(3), key, skip=1)
    assert out["exact"] and out["value"] < 3


def test_all_216_reports_ok(reports216):
    bad = {k: r.computed for k, r in reports216.items() if not r.ok}
    assert not bad
    assert sum(r.status == PASS for r in reports216.values()) == len(reports216) - 1
