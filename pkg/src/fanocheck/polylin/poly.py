"""Sparse multivariate polynomials with coefficients in Q(w)."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..exactnum import ONE, ZERO, Cyclotomic, format_cyclotomic

Monomial = tuple


class MultiPoly:
    """A polynomial stored as ``{exponent vector: coefficient}``.

    ``variables`` fixes the meaning of exponent positions.  Arithmetic between
    polynomials over different variable tuples works over the union of both
    tuples (left operand's order first).
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.variables = tuple(variables)
        clean = {}
        n = len(self.variables)
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} does not match {self.variables}")
            c = Cyclotomic.coerce(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        c = Cyclotomic.coerce(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {mono: ONE})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(v, variables) for v in variables]

    # -- variable bookkeeping ------------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over ``variables``; every variable in use must be present."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} would be dropped")
        idx = [(pos[v], i) for i, v in enumerate(self.variables) if v in pos]
        n = len(variables)
        terms = {}
        for mono, c in self.terms.items():
            new = [0] * n
            for j, i in idx:
                new[j] = mono[i]
            terms[tuple(new)] = c
        return MultiPoly._raw(variables, terms)

    def used_variables(self) -> tuple:
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(i)
        return tuple(v for i, v in enumerate(self.variables) if i in used)

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        extra = tuple(v for v in other.variables if v not in self.variables)
        allv = self.variables + extra
        return self.with_variables(allv), other.with_variables(allv)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(Cyclotomic.coerce(other), self.variables)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a.terms)
        for mono, c in b.terms.items():
            s = terms.get(mono)
            if s is None:
                terms[mono] = c
            else:
                s = s + c
                if s:
                    terms[mono] = s
                else:
                    del terms[mono]
        return MultiPoly._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = Cyclotomic.coerce(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        terms: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(a.variables, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_constant():
                return self.scale(other.constant_term().inv())
            return self.exact_div(other)
        return self.scale(Cyclotomic.coerce(other).inv())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.constant(ONE, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            a, b = self._align(other)
            return a.terms == b.terms
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self == MultiPoly.constant(other, self.variables)

    def __hash__(self):
        return hash(frozenset((self._named(m), c) for m, c in self.terms.items()))

    def _named(self, mono) -> tuple:
        return tuple((v, e) for v, e in zip(self.variables, mono) if e)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection --------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Cyclotomic:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str | None = None) -> int:
        if var is None:
            return self.total_degree()
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficients(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k c_k * var^k``; the ``c_k`` keep the same variables."""
        i = self.variables.index(var)
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = m[i]
            out.setdefault(k, {})[m[:i] + (0,) + m[i + 1:]] = c
        return {k: MultiPoly._raw(self.variables, t) for k, t in out.items()}

    def coefficient(self, var: str, k: int) -> "MultiPoly":
        return self.coefficients(var).get(k, MultiPoly.zero(self.variables))

    def monomial_coefficient(self, **exps: int) -> Cyclotomic:
        mono = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(mono, ZERO)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> "MultiPoly":
        """Drop all terms of total degree greater than ``d``."""
        return MultiPoly._raw(self.variables, {m: c for m, c in self.terms.items() if sum(m) <= d})

    def order(self) -> int:
        """Lowest total degree of a term (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    # -- calculus & substitution -------------------------------------------
    def diff(self, var: str) -> "MultiPoly":
        i = self.variables.index(var)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                terms[m[:i] + (m[i] - 1,) + m[i + 1:]] = c * m[i]
        return MultiPoly._raw(self.variables, terms)

    def subs(self, mapping: Mapping[str, object], variables: Sequence[str] | None = None) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        The result lives over ``variables`` if given, otherwise over the
        untouched variables followed by those of the substituted values.
        """
        images = {}
        for v in self.variables:
            if v in mapping:
                images[v] = mapping[v]
        targets: list[str] = [v for v in self.variables if v not in mapping]
        for val in images.values():
            if isinstance(val, MultiPoly):
                for v in val.variables:
                    if v not in targets:
                        targets.append(v)
        if variables is not None:
            targets = list(variables)
        targets_t = tuple(targets)
        ims = []
        for v in self.variables:
            if v in images:
                val = images[v]
                if isinstance(val, MultiPoly):
                    ims.append(val.with_variables(targets_t))
                else:
                    ims.append(MultiPoly.constant(val, targets_t))
            else:
                ims.append(MultiPoly.var(v, targets_t))
        return self.compose(ims, targets_t)

    def compose(self, images: Sequence["MultiPoly"], variables: Sequence[str]) -> "MultiPoly":
        """Replace the i-th variable by ``images[i]`` (all over ``variables``)."""
        variables = tuple(variables)
        if len(images) != len(self.variables):
            raise ValueError("need one image per variable")
        images = [im.with_variables(variables) for im in images]
        powers: list[dict[int, MultiPoly]] = [dict() for _ in images]

        def power(i: int, e: int) -> MultiPoly:
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        acc: dict = {}
        one = MultiPoly.constant(ONE, variables)
        for m, c in self.terms.items():
            t = one
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for mono, cc in t.terms.items():
                s = acc.get(mono)
                acc[mono] = cc * c if s is None else s + cc * c
        return MultiPoly._raw(variables, {m: c for m, c in acc.items() if c})

    def evaluate(self, point: Mapping[str, object] | Sequence[object]):
        """Evaluate at a point; values may be scalars or any ring elements."""
        if not isinstance(point, Mapping):
            point = dict(zip(self.variables, point))
        vals = [point[v] for v in self.variables]
        total = None
        for m, c in self.terms.items():
            t = c
            for x, e in zip(vals, m):
                if e:
                    t = t * x ** e
            total = t if total is None else total + t
        return ZERO if total is None else total

    # -- division ----------------------------------------------------------
    def leading(self) -> tuple[Monomial, Cyclotomic]:
        m = max(self.terms)
        return m, self.terms[m]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / other``; raises ``ArithmeticError`` if not exact."""
        a, b = self._align(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = b.leading()
        lc_inv = lc.inv()
        rem = dict(a.terms)
        quot: dict = {}
        bterms = list(b.terms.items())
        while rem:
            m = max(rem)
            c = rem[m]
            diff = tuple(x - y for x, y in zip(m, lm))
            if any(d < 0 for d in diff):
                raise ArithmeticError("polynomial division is not exact")
            q = c * lc_inv
            quot[diff] = q
            for mb, cb in bterms:
                mm = tuple(x + y for x, y in zip(mb, diff))
                s = rem.get(mm, ZERO) - q * cb
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return MultiPoly._raw(a.variables, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # -- text ----------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, vars={self.variables})"


def _coeff_parts(c: Cyclotomic) -> tuple[str, str]:
    """Split a coefficient into (sign, magnitude text); magnitude '1' means unit."""
    if c.b == 0:
        q = c.a
        sign = "-" if q < 0 else "+"
        return sign, format_cyclotomic(Cyclotomic(abs(q)))
    if c.a == 0:
        sign = "-" if c.b < 0 else "+"
        return sign, format_cyclotomic(Cyclotomic(0, abs(c.b)))
    return "+", f"({format_cyclotomic(c)})"


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    order = sorted(p.terms, key=lambda m: (-sum(m), tuple(-e for e in m)))
    pieces = []
    for idx, m in enumerate(order):
        sign, mag = _coeff_parts(p.terms[m])
        factors = []
        for v, e in zip(p.variables, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        if factors:
            body = "*".join(factors) if mag == "1" else mag + "*" + "*".join(factors)
        else:
            body = mag
        if idx == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def poly_from_univariate(coeffs: Iterable, var: str, variables: Sequence[str] | None = None) -> MultiPoly:
    variables = tuple(variables) if variables is not None else (var,)
    i = variables.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        mono = tuple(k if j == i else 0 for j in range(len(variables)))
        terms[mono] = c
    return MultiPoly(variables, terms)


def as_poly(x, variables: Sequence[str] = ()) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction, Cyclotomic)):
        return MultiPoly.constant(x, variables)
    if isinstance(x, str):
        from .parse import parse_poly

        return parse_poly(x, variables or None)
    raise TypeError(f"cannot make a polynomial from {type(x).__name__}")
