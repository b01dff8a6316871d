from fractions import Fraction

import pytest
import sympy

from fanocheck.exactnum import Cyclotomic, as_fraction, format_cyclotomic, parse_cyclotomic

W = Cyclotomic(0, 1)
_t = sympy.Symbol("t")
_MIN = _t**2 + _t + 1


def _sym(x: Cyclotomic):
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * _t


def _back(expr) -> Cyclotomic:
    r = sympy.Poly(sympy.rem(sympy.expand(expr), _MIN, _t), _t)
    c = dict(zip([m[0] for m in r.monoms()], r.coeffs()))
    to_f = lambda q: Fraction(int(sympy.numer(q)), int(sympy.denom(q)))
    return Cyclotomic(to_f(c.get(0, 0)), to_f(c.get(1, 0)))


def test_cube_root_of_unity():
    assert W**3 == 1
    assert W * W + W + 1 == 0
    assert W.conj() == W * W


@pytest.mark.parametrize("x,y", [(Cyclotomic(1, 2), Cyclotomic(-3, Fraction(1, 2))),
                                 (Cyclotomic(Fraction(2, 7), -1), Cyclotomic(5, 5)),
                                 (Cyclotomic(0, 1), Cyclotomic(1, 1))])
def test_products_agree_with_reduction_mod_minimal_polynomial(x, y):
    assert x * y == _back(_sym(x) * _sym(y))


def test_inverse_via_norm():
    x = Cyclotomic(2, -3)
    assert x.norm() == Fraction(4 + 6 + 9)
    assert x * x.inv() == 1
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(0).inv()


def test_text_forms():
    for text in ["-(w+2)", "1/3*w", "-1/2-3/4*w", "0", "w"]:
        x = parse_cyclotomic(text)
        assert parse_cyclotomic(format_cyclotomic(x)) == x
    assert parse_cyclotomic("-(w+2)") == Cyclotomic(-2, -1)


def test_as_fraction_rejects_irrational():
    assert as_fraction(Cyclotomic(Fraction(3, 4))) == Fraction(3, 4)
    with pytest.raises(ValueError):
        as_fraction(W)
