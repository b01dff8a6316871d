"""Finite matrix groups over Q(w) and their linear characters.

A group is enumerated once by breadth-first closure of its generators.  The
enumeration records, for every element, the index of ``element * gen_j``;
this multiplication table is what representations and characters given on
generators are checked against.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import ONE, ZERO, Cyclotomic
from .polylin.matrix import Matrix, kron, nullspace
from .polylin.ops import proportionality, substitute_linear
from .polylin.poly import MultiPoly

DEFAULT_CAP = 256


class GroupTooLarge(RuntimeError):
    pass


class InconsistentRepresentation(ValueError):
    pass


def _key(m: Matrix) -> tuple:
    return tuple(tuple(r) for r in m.rows)


def _is_scalar(m: Matrix) -> bool:
    d = m.rows[0][0]
    return all((x == d) if i == j else (not x) for i, r in enumerate(m.rows) for j, x in enumerate(r))


class MatrixGroup:
    """Closure of a list of invertible square matrices."""

    def __init__(self, generators: Sequence[Matrix], name: str = "", cap: int = DEFAULT_CAP):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].nrows
        for g in gens:
            if g.shape != (n, n):
                raise ValueError("generators must be square of equal size")
        self.generators = gens
        self.name = name
        self.dim = n
        ident = Matrix.identity(n)
        elements = [ident]
        words: list[tuple[int, ...]] = [()]
        index = {_key(ident): 0}
        right: list[list[int]] = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            row = []
            for j, g in enumerate(gens):
                prod = elements[i] @ g
                k = _key(prod)
                if k not in index:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"closure exceeds {cap} elements")
                    index[k] = len(elements)
                    elements.append(prod)
                    words.append(words[i] + (j,))
                    queue.append(index[k])
                row.append(index[k])
            right.append(row)
        # right[] was filled in BFS order, which matches element order
        self.elements = elements
        self.words = words
        self.right = right
        self._index = index

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index_of(self, m: Matrix) -> int:
        return self._index[_key(m)]

    def contains(self, m: Matrix) -> bool:
        return _key(m) in self._index

    def element_order(self, i: int) -> int:
        g = self.elements[i]
        acc, k = g, 1
        while not acc.is_identity():
            acc = acc @ g
            k += 1
        return k

    def projective_order(self, i: int) -> int:
        """Smallest ``k`` with ``g^k`` a scalar matrix."""
        g = self.elements[i]
        acc, k = g, 1
        while not _is_scalar(acc):
            acc = acc @ g
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def projective_image_order(self) -> int:
        classes = set()
        for g in self.elements:
            d = next(x for r in g.rows for x in r if x)
            classes.add(_key(g * d.inv()))
        return len(classes)

    def is_closed(self) -> bool:
        for a in self.elements:
            if not any((a @ b).is_identity() for b in self.elements):
                return False
        return all(self.contains(a @ b) for a in self.elements for b in self.generators)

    def __repr__(self):
        return f"MatrixGroup({self.name or '?'}, order={self.order})"


def enumerate_group(generators: Sequence[Matrix], name: str = "", cap: int = DEFAULT_CAP) -> MatrixGroup:
    return MatrixGroup(generators, name=name, cap=cap)


@dataclass(frozen=True)
class LinearCharacter:
    """Homomorphism ``G -> Q(w)^*`` given by its values on the generators."""

    group: MatrixGroup
    values: tuple

    def __post_init__(self):
        vals = tuple(Cyclotomic.coerce(v) for v in self.values)
        if len(vals) != len(self.group.generators):
            raise ValueError("one value per generator is required")
        object.__setattr__(self, "values", vals)
        table = self.table()
        for i, row in enumerate(self.group.right):
            for j, k in enumerate(row):
                if table[k] != table[i] * vals[j]:
                    raise InconsistentRepresentation("values do not extend to a homomorphism")

    def table(self) -> list[Cyclotomic]:
        out = []
        for w in self.group.words:
            v = ONE
            for j in w:
                v = v * self.values[j]
            out.append(v)
        return out

    def __call__(self, i: int) -> Cyclotomic:
        return self.table()[i]

    def is_trivial(self) -> bool:
        return all(v == ONE for v in self.values)


def semi_invariant_character(p: MultiPoly, group: MatrixGroup) -> LinearCharacter | None:
    """Character ``chi`` with ``p(g x) = chi(g) p(x)`` for all generators, or ``None``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no character")
    if len(p.variables) != group.dim:
        raise ValueError("matrix size does not match the number of variables")
    vals = []
    for g in group.generators:
        c = proportionality(substitute_linear(p, g), p)
        if not isinstance(c, Cyclotomic):
            return None
        vals.append(c)
    try:
        return LinearCharacter(group, tuple(vals))
    except InconsistentRepresentation:
        return None


def character_power(chi: LinearCharacter, gen_index: int, root: Cyclotomic) -> int | None:
    """Exponent ``k`` with ``chi(gen) = root^k`` (``None`` if not a power)."""
    v, acc = chi.values[gen_index], ONE
    for k in range(12):
        if acc == v:
            return k
        acc = acc * root
    return None


class Representation:
    """Matrices per generator, verified against the group's multiplication table."""

    def __init__(self, group: MatrixGroup, matrices: Sequence[Matrix]):
        mats = list(matrices)
        if len(mats) != len(group.generators):
            raise ValueError("one matrix per generator is required")
        d = mats[0].nrows
        if any(m.shape != (d, d) for m in mats):
            raise ValueError("representation matrices must be square of equal size")
        self.group = group
        self.matrices = mats
        self.dim = d
        images = []
        for w in group.words:
            acc = Matrix.identity(d)
            for j in w:
                acc = acc @ mats[j]
            images.append(acc)
        for i, row in enumerate(group.right):
            for j, k in enumerate(row):
                if images[i] @ mats[j] != images[k]:
                    raise InconsistentRepresentation("matrices do not define a representation")
        self.images = images

    def character(self) -> list[Cyclotomic]:
        return [m.trace() for m in self.images]


def character_eigenspace_dim(rep: Representation, chi: LinearCharacter) -> int:
    """``dim {v : rho(g) v = chi(g) v for every generator g}``."""
    if chi.group is not rep.group:
        raise ValueError("character and representation live on different groups")
    d = rep.dim
    stack = None
    for m, c in zip(rep.matrices, chi.values):
        block = m - Matrix.identity(d) * c
        stack = block if stack is None else stack.vstack(block)
    return len(nullspace(stack))


def linear_characters(group: MatrixGroup, roots: Sequence[Cyclotomic]) -> list[LinearCharacter]:
    """All linear characters with generator values among ``roots``."""
    import itertools

    out = []
    for vals in itertools.product(roots, repeat=len(group.generators)):
        try:
            out.append(LinearCharacter(group, vals))
        except InconsistentRepresentation:
            continue
    return out


def _sym_matrix(m: Matrix, k: int) -> Matrix:
    d = m.nrows
    names = tuple(f"z{i}" for i in range(d))
    z = MultiPoly.gens(names)
    # image of basis vector e_j is column j
    images = []
    for j in range(d):
        acc = MultiPoly.zero(names)
        for i in range(d):
            if m.rows[i][j]:
                acc = acc + z[i].scale(m.rows[i][j])
        images.append(acc)
    basis = sym_basis(d, k)
    pos = {e: n for n, e in enumerate(basis)}
    cols = []
    for e in basis:
        mono = MultiPoly.constant(ONE, names)
        for j, ej in enumerate(e):
            if ej:
                mono = mono * images[j] ** ej
        col = [ZERO] * len(basis)
        for mexp, c in mono.terms.items():
            col[pos[mexp]] = c
        cols.append(col)
    return Matrix([list(r) for r in zip(*cols)], coerce=None)


def sym_basis(d: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``k`` in ``d`` variables, lexicographically descending."""
    if d == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in sym_basis(d - 1, k - first):
            out.append((first,) + rest)
    return out


def sym_power_rep(rep: Representation, k: int) -> Representation:
    return Representation(rep.group, [_sym_matrix(m, k) for m in rep.matrices])


def tensor_rep(r1: Representation, r2: Representation) -> Representation:
    if r1.group is not r2.group:
        raise ValueError("representations of different groups")
    return Representation(r1.group, [kron(a, b) for a, b in zip(r1.matrices, r2.matrices)])


def sym_trace_oracle(m: Matrix, k: int) -> Cyclotomic:
    """Trace of ``Sym^k`` via Newton's identities on power sums (k <= 3)."""
    p = [None] + [(m ** i).trace() for i in range(1, k + 1)]
    if k == 1:
        return p[1]
    if k == 2:
        return (p[1] * p[1] + p[2]) * Fraction(1, 2)
    if k == 3:
        return (p[1] ** 3 + p[1] * p[2] * 3 + p[3] * 2) * Fraction(1, 6)
    raise ValueError("oracle implemented for k <= 3")


def min_orbit_length_on_P1(group: MatrixGroup | None = None, *, order: int | None = None,
                           element_orders: Sequence[int] | None = None) -> int:
    """Smallest orbit length of a faithful action on P^1.

    Point stabilizers of a finite subgroup of PGL_2 are cyclic, so the
    smallest orbit has length ``|G| / (largest element order)``.  With a
    matrix group the projective image and projective element orders are used.
    """
    if group is not None:
        n = group.projective_image_order()
        top = max(group.projective_order(i) for i in range(group.order))
    else:
        if order is None or not element_orders:
            raise ValueError("give a group or an order table")
        n, top = order, max(element_orders)
    if n % top:
        raise ValueError("largest element order does not divide the group order")
    return n // top
