"""Exact scalars: rationals and the cyclotomic field Q(w), w^2 + w + 1 = 0.

Rationals are :class:`fractions.Fraction`.  Elements of Q(w) are stored in
the basis {1, w}.  The text form uses ``w`` for the cube root of unity,
e.g. ``-(w+2)``, ``1/3*w``, ``-1/2-3/4*w``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

Scalar = Union[int, Fraction, "Cyclotomic"]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, Cyclotomic):
        if x.b:
            raise ValueError(f"{x} is not rational")
        return x.a
    if isinstance(x, str):
        return as_fraction(parse_cyclotomic(x))
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


class Cyclotomic:
    """The element ``a + b*w`` of Q(w)."""

    __slots__ = ("a", "b", "_hash")

    def __init__(self, a=0, b=0):
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, str):
            return parse_cyclotomic(x)
        return cls(as_fraction(x), 0)

    # -- field operations -------------------------------------------------
    def __add__(self, other):
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.a * other, self.b * other)
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
        bd = self.b * o.b
        return Cyclotomic(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        """Image under the automorphism w -> w^2 = -1 - w."""
        return Cyclotomic(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        # (a + b w)(a + b w^2) = a^2 - ab + b^2
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inv(self) -> "Cyclotomic":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conj()
        return Cyclotomic(c.a / n, c.b / n)

    def __truediv__(self, other):
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        try:
            o = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.a) if self.b == 0 else hash((self.a, self.b))
        return self._hash

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"Cyclotomic({format_cyclotomic(self)!r})"

    def __str__(self):
        return format_cyclotomic(self)


ZERO = Cyclotomic(0, 0)
ONE = Cyclotomic(1, 0)
OMEGA = Cyclotomic(0, 1)
OMEGA2 = Cyclotomic(-1, -1)


def cyc_mul(x: Cyclotomic, y: Cyclotomic) -> Cyclotomic:
    return Cyclotomic.coerce(x) * Cyclotomic.coerce(y)


def cyc_inv(x: Cyclotomic) -> Cyclotomic:
    return Cyclotomic.coerce(x).inv()


# -- text form ---------------------------------------------------------------

def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cyclotomic(x: Cyclotomic) -> str:
    a, b = x.a, x.b
    if b == 0:
        return _format_fraction(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{_format_fraction(b)}*w"
    if a == 0:
        return wpart
    sep = "" if wpart.startswith("-") else "+"
    return f"{_format_fraction(a)}{sep}{wpart}"


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse an element of Q(w) from its text form (an expression in ``w``)."""
    from .polylin.parse import parse_poly

    p = parse_poly(text, ())
    if p.variables:
        raise ValueError(f"not a constant: {text!r}")
    return p.constant_term()
