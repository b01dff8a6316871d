"""Dense univariate polynomials over Q(w) and the rational function field Q(w)(t)."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..exactnum import ONE, ZERO, Cyclotomic
from .poly import MultiPoly


class UPoly:
    """Coefficient tuple, lowest degree first, no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Cyclotomic.coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c: list) -> "UPoly":
        while c and not c[-1]:
            c.pop()
        p = cls.__new__(cls)
        p.c = tuple(c)
        return p

    @classmethod
    def constant(cls, x) -> "UPoly":
        return cls([x])

    @classmethod
    def x(cls) -> "UPoly":
        return cls([ZERO, ONE])

    @classmethod
    def from_poly(cls, p: MultiPoly, var: str) -> "UPoly":
        others = [v for v in p.used_variables() if v != var]
        if others:
            raise ValueError(f"{p} is not univariate in {var}")
        if var not in p.variables:
            return cls([p.constant_term()])
        i = p.variables.index(var)
        d = p.degree(var)
        coeffs = [ZERO] * (d + 1)
        for m, c in p.terms.items():
            coeffs[m[i]] = c
        return cls(coeffs)

    def to_poly(self, var: str, variables: Sequence[str] | None = None) -> MultiPoly:
        from .poly import poly_from_univariate

        return poly_from_univariate(self.c, var, variables)

    # -- basics --------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self) -> Cyclotomic:
        return self.c[-1] if self.c else ZERO

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        if isinstance(other, (int, Cyclotomic)):
            return self == UPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _co(self, other) -> "UPoly":
        return other if isinstance(other, UPoly) else UPoly.constant(other)

    def __add__(self, other):
        o = self._co(other)
        n = max(len(self.c), len(o.c))
        return UPoly._raw([(self.c[i] if i < len(self.c) else ZERO) + (o.c[i] if i < len(o.c) else ZERO) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            k = Cyclotomic.coerce(other)
            return UPoly._raw([x * k for x in self.c])
        if not self.c or not other.c:
            return UPoly._raw([])
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UPoly.constant(ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "UPoly"):
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return UPoly._raw([]), self
        inv = other.c[-1].inv()
        quot = [ZERO] * (dq + 1)
        db = len(other.c) - 1
        for k in range(dq, -1, -1):
            q = rem[k + db] * inv
            quot[k] = q
            if q:
                for j, b in enumerate(other.c):
                    rem[k + j] = rem[k + j] - q * b
        return UPoly._raw(quot), UPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "UPoly":
        if not self.c:
            return self
        return self * self.c[-1].inv()

    def deriv(self) -> "UPoly":
        return UPoly._raw([self.c[i] * i for i in range(1, len(self.c))])

    def __call__(self, x):
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def __repr__(self):
        return f"UPoly({[str(x) for x in self.c]})"


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both inputs vanish)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UPoly) -> UPoly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(upoly_gcd(p, p.deriv())).monic()


class RatFunc:
    """Element of Q(w)(t): reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = num if isinstance(num, UPoly) else UPoly.constant(num)
        den = UPoly.constant(ONE) if den is None else (den if isinstance(den, UPoly) else UPoly.constant(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = UPoly.constant(ONE)
            elif not den.is_constant():
                g = upoly_gcd(num, den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if lc != ONE:
                inv = lc.inv()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, UPoly):
            return cls(x)
        return cls(UPoly.constant(x))

    def __add__(self, other):
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"
