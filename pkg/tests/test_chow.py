from fractions import Fraction

import pytest
import sympy

from fanocheck import chow
from fanocheck.chow import blowup_curve, complete_intersection, numeric, product_hypersurface


def _degree_oracle(dims, degrees):
    """(-K)^3 by expanding in Z[h]/(h_i^(dim_i+1)) with sympy."""
    hs = sympy.symbols(f"h0:{len(dims)}")
    K = sum((dims[i] + 1 - sum(d[i] for d in degrees)) * hs[i] for i in range(len(dims)))
    expr = K**3
    for d in degrees:
        expr *= sum(c * h for c, h in zip(d, hs))
    poly = sympy.Poly(sympy.expand(expr), *hs)
    return int(poly.coeff_monomial(sympy.Mul(*[h**e for h, e in zip(hs, dims)])))


@pytest.mark.parametrize("dims,degrees", [
    ([1, 3], [[1, 1]]),
    ([1, 1, 2], [[1, 1, 1]]),
    ([3], []),
    ([4], [[2]]),
    ([4], [[3]]),
    ([2, 2], [[1, 1]]),
    ([1, 1, 1], []),
    ([5], [[2], [2]]),
    ([2, 2], [[2, 2]]),
])
def test_anticanonical_degree_matches_expansion(dims, degrees):
    X = complete_intersection(dims, degrees)
    assert numeric(X.cube(X.anticanonical())) == _degree_oracle(dims, degrees)


def test_degree_one_one_divisor_in_p2_p2():
    X = product_hypersurface([2, 2], [1, 1])
    assert numeric(X.cube(X.anticanonical())) == 48 == _degree_oracle([2, 2], [[1, 1]])
    with pytest.raises(ValueError):
        product_hypersurface([2, 1], [1, 1])


@pytest.mark.parametrize("H_dot_Z,genus,expected", [
    (1, 0, 54),   # line
    (2, 0, 46),   # conic
    (3, 0, 38),   # twisted cubic
    (3, 1, 40),   # plane cubic
    (4, 1, 32),   # quartic elliptic curve
])
def test_blowups_of_projective_space(H_dot_Z, genus, expected):
    P3 = complete_intersection([3], [], names=["H"])
    Y = blowup_curve(P3, "Z", genus=genus, pairings={"H": H_dot_Z})
    assert numeric(Y.cube(Y.anticanonical())) == expected
    # (-K_Y)^3 = (-K_X)^3 - 2(-K_X.Z) + 2g - 2
    assert expected == 64 - 2 * 4 * H_dot_Z + 2 * genus - 2


def test_blowup_relations():
    P3 = complete_intersection([3], [], names=["H"])
    Y = blowup_curve(P3, "Z", genus=0, pairings={"H": 2}, exceptional="E")
    H, E = Y.cls("H"), Y.cls("E")
    assert numeric(Y.triple(H, H, E)) == 0
    assert numeric(Y.triple(H, E, E)) == -2
    # E^3 = 2 - 2g + K.Z = 2 - 8
    assert numeric(Y.cube(E)) == -6
    assert numeric(E.dot_curve(Y.curve("E.fiber"))) == -1


def test_blowup_rejects_inconsistent_data():
    P3 = complete_intersection([3], [], names=["H"])
    with pytest.raises(ValueError):
        blowup_curve(P3, "Z", genus=0, pairings={"H": 1}, KdotZ=-3)
    with pytest.raises(ValueError):
        blowup_curve(P3, "Z", genus=0, pairings={"H": 1}, exceptional="H")
    with pytest.raises(ValueError):
        complete_intersection([3], [[1], [1]])


def test_aliases_and_parse():
    X = product_hypersurface([1, 1, 2], [1, 1, 1], names=["h1", "h2", "hL"])
    X = X.define("E1", "h1-h2+hL")
    assert X.parse_class("E1+h2") == X.parse_class("h1+hL")
    with pytest.raises((KeyError, ValueError)):
        X.parse_class("E1 +* h2")


def test_riemann_roch():
    assert chow.riemann_roch_anticanonical(12) == 9
    assert chow.riemann_roch_anticanonical(22) == 14
    assert chow.riemann_roch_anticanonical(36) == 21
    with pytest.raises(ValueError):
        chow.riemann_roch_anticanonical(13)


def test_weighted_log_discrepancy():
    assert chow.weighted_log_discrepancy(2, 7, 1, 2) == Fraction(16)
    with pytest.raises(ValueError):
        chow.weighted_log_discrepancy(0, 1, 1, 1)
