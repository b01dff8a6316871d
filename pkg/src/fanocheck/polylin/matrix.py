"""Dense exact matrices.

Entries are field elements (:class:`Cyclotomic`, :class:`RatFunc`) or, for
determinants only, polynomials (:class:`MultiPoly`), where fraction-free
Bareiss elimination with exact division is used.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from ..exactnum import ONE, ZERO, Cyclotomic
from .poly import MultiPoly


class Matrix:
    """Row-major dense matrix; treat as immutable."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], coerce: Callable | None = Cyclotomic.coerce):
        rows = [list(r) for r in rows]
        if coerce is not None:
            rows = [[x if isinstance(x, (MultiPoly,)) else _coerce(x, coerce) for x in r] for r in rows]
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, one=ONE, zero=ZERO) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], coerce=None)

    @classmethod
    def zeros(cls, r: int, c: int, zero=ZERO) -> "Matrix":
        return cls([[zero] * c for _ in range(r)], coerce=None)

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]]) -> "Matrix":
        from .parse import parse_scalar

        return cls([[parse_scalar(x) for x in r] for r in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)], coerce=None) if self.rows else Matrix([], coerce=None)

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if a and b:
                        acc = a * b if acc is None else acc + a * b
                row.append(acc if acc is not None else _zero_like(r[0] if r else ZERO))
            out.append(row)
        return Matrix(out, coerce=None)

    def __mul__(self, k):
        return Matrix([[x * k for x in r] for r in self.rows], coerce=None)

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], coerce=None)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], coerce=None)

    def apply(self, v: Sequence) -> list:
        return [sum_(a * b for a, b in zip(r, v)) for r in self.rows]

    def map(self, fn: Callable) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows], coerce=None)

    def trace(self):
        return sum_(self.rows[i][i] for i in range(min(self.shape)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.nrows and other.nrows and self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.rows + other.rows, coerce=None)

    def is_identity(self) -> bool:
        return all((x == ONE) if i == j else (not x) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __pow__(self, k: int) -> "Matrix":
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- linear algebra over a field -----------------------------------------
    def rref(self) -> tuple["Matrix", list[int]]:
        return rref(self)

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[list]:
        return nullspace(self)

    def det(self):
        return det(self)

    def inverse(self) -> "Matrix":
        return inverse(self)


CycMatrix = Matrix


def _coerce(x, coerce):
    try:
        return coerce(x)
    except TypeError:
        return x


def _zero_like(x):
    if isinstance(x, MultiPoly):
        return MultiPoly.zero(x.variables)
    return x * 0 if not isinstance(x, Cyclotomic) else ZERO


def sum_(items):
    acc = None
    for x in items:
        acc = x if acc is None else acc + x
    return ZERO if acc is None else acc


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over a field, with pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c] if isinstance(rows[r][c], Cyclotomic) else rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.nrows:
            break
    return Matrix(rows, coerce=None), pivots


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    sample = next((x for r in m.rows for x in r if x), None)
    if sample is None:
        return 0
    if isinstance(sample, MultiPoly):
        return _rank_fraction_free(m)
    return len(rref(m)[1])


def _rank_fraction_free(m: Matrix) -> int:
    rows = [list(r) for r in m.rows]
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, m.nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, m.nrows):
            if rows[i][c]:
                f = rows[i][c]
                rows[i] = [p * a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == m.nrows:
            break
    return r


def nullspace(m: Matrix) -> list[list]:
    """Basis of the right kernel ``{v : m v = 0}``."""
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    sample = next((x for r in m.rows for x in r), ONE)
    one = sample * 0 + 1 if not isinstance(sample, Cyclotomic) else ONE
    zero = one * 0 if not isinstance(one, Cyclotomic) else ZERO
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        basis.append(v)
    return basis


def det(m: Matrix):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return ONE
    if any(isinstance(x, MultiPoly) for r in m.rows for x in r):
        return _det_bareiss(m)
    rows = [list(r) for r in m.rows]
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return rows[0][0] * 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        p = rows[c][c]
        d = d * p
        inv = p.inv()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def _det_bareiss(m: Matrix) -> MultiPoly:
    variables: tuple = ()
    for r in m.rows:
        for x in r:
            if isinstance(x, MultiPoly):
                for v in x.variables:
                    if v not in variables:
                        variables = variables + (v,)
    rows = [[(x if isinstance(x, MultiPoly) else MultiPoly.constant(x, variables)).with_variables(variables) for x in r] for r in m.rows]
    n = len(rows)
    sign = 1
    prev = MultiPoly.constant(ONE, variables)
    for k in range(n - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return MultiPoly.zero(variables)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pk * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = num.exact_div(prev) if not prev.is_constant() else num.scale(prev.constant_term().inv())
            rows[i][k] = MultiPoly.zero(variables)
        prev = pk
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    aug = Matrix([list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)], coerce=None)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix([r[n:] for r in red.rows], coerce=None)


def solve(m: Matrix, b: Sequence) -> list | None:
    """One solution of ``m x = b`` or ``None`` if inconsistent."""
    aug = Matrix([list(r) + [bi] for r, bi in zip(m.rows, b)], coerce=None)
    red, piv = rref(aug)
    if m.ncols in piv:
        return None
    sample = b[0] if len(b) else ZERO
    zero = sample * 0 if not isinstance(sample, Cyclotomic) else ZERO
    x = [zero] * m.ncols
    for i, p in enumerate(piv):
        x[p] = red.rows[i][m.ncols]
    return x


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return Matrix(rows, coerce=None)
