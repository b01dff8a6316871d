from fractions import Fraction

import pytest

from fanocheck.exactnum import Cyclotomic
from fanocheck.grouprep import (
    GroupTooLarge,
    InconsistentRepresentation,
    LinearCharacter,
    Representation,
    character_eigenspace_dim,
    enumerate_group,
    linear_characters,
    min_orbit_length_on_P1,
    semi_invariant_character,
    sym_power_rep,
    sym_trace_oracle,
    tensor_rep,
)
from fanocheck.polylin import Matrix, parse_poly

W = Cyclotomic(0, 1)
ROOTS6 = [Cyclotomic(1), -Cyclotomic(1), W, W * W, -W, -W * W]


def _perm(p):
    n = len(p)
    return Matrix([[1 if p[i] == j else 0 for j in range(n)] for i in range(n)])


@pytest.fixture(scope="module")
def s3():
    return enumerate_group([_perm([1, 0, 2]), _perm([1, 2, 0])], name="S3")


@pytest.fixture(scope="module")
def z3xs3():
    # diag(1, w, w^2) together with S3 permuting coordinates: order 18 or 54
    return enumerate_group([Matrix([[1, 0, 0], [0, W, 0], [0, 0, W * W]]), _perm([1, 0, 2]), _perm([1, 2, 0])])


def test_orders(s3):
    assert s3.order == 6
    assert sorted(s3.element_orders()) == [1, 2, 2, 2, 3, 3]
    assert s3.is_closed()


def test_cap():
    with pytest.raises(GroupTooLarge):
        enumerate_group([Matrix([[W, 0], [0, 1]]), Matrix([[0, 1], [1, 0]])], cap=5)


def test_characters_of_s3(s3):
    chars = linear_characters(s3, ROOTS6)
    assert len(chars) == 2
    sign = [c for c in chars if not c.is_trivial()][0]
    assert sign.values == (Cyclotomic(-1), Cyclotomic(1))
    with pytest.raises(InconsistentRepresentation):
        LinearCharacter(s3, (W, 1))


def test_semi_invariants(s3):
    vs = ("x", "y", "z")
    assert semi_invariant_character(parse_poly("x+y+z", vs), s3).is_trivial()
    vdm = parse_poly("(x-y)*(y-z)*(z-x)", vs)
    assert semi_invariant_character(vdm, s3).values == (Cyclotomic(-1), Cyclotomic(1))
    assert semi_invariant_character(parse_poly("x", vs), s3) is None


def _isotypic_oracle(rep, chi):
    """(1/|G|) sum chi(g)^-1 tr rho(g)."""
    tab, tr = chi.table(), rep.character()
    total = sum((tr[i] * tab[i].inv() for i in range(rep.group.order)), Cyclotomic(0))
    return total * Fraction(1, rep.group.order)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sym_powers_and_isotypic_dimensions(z3xs3, k):
    G = z3xs3
    rep = Representation(G, G.generators)
    sk = sym_power_rep(rep, k)
    for i in range(G.order):
        assert sk.character()[i] == sym_trace_oracle(rep.images[i], k)
    for chi in linear_characters(G, ROOTS6):
        assert Cyclotomic(character_eigenspace_dim(sk, chi)) == _isotypic_oracle(sk, chi)


def test_tensor_character(s3):
    rep = Representation(s3, s3.generators)
    t = tensor_rep(rep, rep)
    assert t.character() == [a * a for a in rep.character()]


def test_bad_representation(s3):
    with pytest.raises(InconsistentRepresentation):
        Representation(s3, [Matrix([[1]]), Matrix([[-1]])])


def test_min_orbit_on_P1():
    # A4 in PGL_2: order 12, largest element order 3
    assert min_orbit_length_on_P1(order=12, element_orders=[1, 2, 3]) == 4
    assert min_orbit_length_on_P1(order=60, element_orders=[1, 2, 3, 5]) == 12
    with pytest.raises(ValueError):
        min_orbit_length_on_P1(order=10, element_orders=[3])
