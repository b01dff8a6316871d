"""Divisor intersection rings of smooth threefolds.

A :class:`ChowThreefold` stores a named divisor basis, the symmetric triple
intersection tensor, the canonical class, and a ledger of curve classes
(recorded by their pairings with the basis).  Rings are built from complete
intersections in products of projective spaces and extended by blow-ups of
smooth curves.  Divisor classes may carry formal parameters in their
coordinates; the tensor itself is always rational.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactnum import Cyclotomic, as_fraction
from .polylin.parse import parse_poly
from .polylin.poly import MultiPoly


def _sorted3(i: int, j: int, k: int) -> tuple[int, int, int]:
    return tuple(sorted((i, j, k)))  # type: ignore[return-value]


@dataclass(frozen=True)
class CurveRecord:
    name: str
    pairings: tuple  # Fraction per basis divisor
    genus: int = 0


class DivClass:
    """Coordinates (polynomials in formal parameters) over a ring's basis."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: "ChowThreefold", coords: Sequence):
        if len(coords) != len(ring.basis):
            raise ValueError(f"expected {len(ring.basis)} coordinates, got {len(coords)}")
        self.ring = ring
        self.coords = tuple(c if isinstance(c, MultiPoly) else MultiPoly.constant(c) for c in coords)

    def _check(self, other: "DivClass"):
        if other.ring.basis != self.ring.basis:
            raise ValueError("classes live on different rings")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.ring, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.ring, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "DivClass":
        return DivClass(self.ring, [-a for a in self.coords])

    def __mul__(self, k) -> "DivClass":
        if isinstance(k, MultiPoly):
            return DivClass(self.ring, [a * k for a in self.coords])
        return DivClass(self.ring, [a.scale(k) for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DivClass) and other.ring.basis == self.ring.basis and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    def __hash__(self):
        return hash(self.coords)

    def pullback(self, ring: "ChowThreefold") -> "DivClass":
        """Same class on a blow-up whose basis extends this ring's basis."""
        n = len(self.ring.basis)
        if ring.basis[:n] != self.ring.basis:
            raise ValueError("target ring does not extend this ring")
        return DivClass(ring, list(self.coords) + [MultiPoly.zero()] * (len(ring.basis) - n))

    def dot_curve(self, curve: CurveRecord) -> MultiPoly:
        acc = MultiPoly.zero()
        for c, p in zip(self.coords, curve.pairings):
            if p:
                acc = acc + c.scale(p)
        return acc

    def __str__(self):
        parts = []
        for name, c in zip(self.ring.basis, self.coords):
            if c.is_zero():
                continue
            if c.is_constant():
                k = c.constant_term()
                if k == 1:
                    parts.append(f"+{name}")
                elif k == -1:
                    parts.append(f"-{name}")
                else:
                    s = str(k)
                    parts.append(f"{'' if s.startswith('-') else '+'}{s}*{name}")
            else:
                parts.append(f"+({c})*{name}")
        out = "".join(parts).lstrip("+")
        return out or "0"

    __repr__ = __str__


class ChowThreefold:
    def __init__(self, basis: Sequence[str], tensor: Mapping[tuple, Fraction], canonical: Sequence,
                 curves: Mapping[str, CurveRecord] | None = None, aliases: Mapping[str, tuple] | None = None,
                 name: str = ""):
        self.basis = tuple(basis)
        n = len(self.basis)
        self.tensor: dict[tuple, Fraction] = {}
        for (i, j, k), v in tensor.items():
            v = as_fraction(v)
            if v:
                self.tensor[_sorted3(i, j, k)] = v
        self.canonical = tuple(as_fraction(c) for c in canonical)
        if len(self.canonical) != n:
            raise ValueError("canonical class has the wrong length")
        self.curves = dict(curves or {})
        self._aliases = dict(aliases or {})
        self.name = name

    # -- classes -------------------------------------------------------------
    def cls(self, name: str) -> DivClass:
        if name in self.basis:
            coords = [0] * len(self.basis)
            coords[self.basis.index(name)] = 1
            return DivClass(self, coords)
        if name in self._aliases:
            coords = list(self._aliases[name]) + [0] * (len(self.basis) - len(self._aliases[name]))
            return DivClass(self, coords)
        raise KeyError(f"unknown divisor {name!r}")

    def names(self) -> tuple:
        return self.basis + tuple(a for a in self._aliases if a not in self.basis)

    def canonical_class(self) -> DivClass:
        return DivClass(self, self.canonical)

    def anticanonical(self) -> DivClass:
        return -self.canonical_class()

    def define(self, name: str, cls: "DivClass | str", params: Sequence[str] = ()) -> "ChowThreefold":
        """Ring with an extra named class (alias); aliases persist through blow-ups."""
        if isinstance(cls, str):
            cls = self.parse_class(cls, params)
        if any(not c.is_constant() for c in cls.coords):
            raise ValueError("aliases must have constant coordinates")
        aliases = dict(self._aliases)
        aliases[name] = tuple(c.constant_term().a for c in cls.coords)
        return ChowThreefold(self.basis, self.tensor, self.canonical, self.curves, aliases, self.name)

    def parse_class(self, text: str, params: Sequence[str] = ()) -> DivClass:
        """Parse a class like ``2*H - E - m*F``; non-class names are formal parameters."""
        names = self.names()
        tokens = parse_poly(text)  # discover names in order of appearance
        extra = [v for v in tokens.variables if v not in names and v not in params]
        params = tuple(params) + tuple(extra)
        p = parse_poly(text, names + params)
        coords = [MultiPoly.zero(params) for _ in self.basis]
        for mono, c in p.terms.items():
            cls_exps = [(names[i], e) for i, e in enumerate(mono[: len(names)]) if e]
            if len(cls_exps) != 1 or cls_exps[0][1] != 1:
                raise ValueError(f"{text!r} is not linear in divisor classes")
            coeff = MultiPoly(params, {mono[len(names):]: c})
            base = self.cls(cls_exps[0][0])
            for i, bc in enumerate(base.coords):
                if not bc.is_zero():
                    coords[i] = coords[i] + coeff.scale(bc.constant_term())
        return DivClass(self, coords)

    # -- intersection numbers ----------------------------------------------
    def value(self, i: int, j: int, k: int) -> Fraction:
        return self.tensor.get(_sorted3(i, j, k), Fraction(0))

    def triple(self, a: DivClass, b: DivClass, c: DivClass) -> MultiPoly:
        for x in (a, b, c):
            if x.ring.basis != self.basis:
                raise ValueError("class does not belong to this ring")
        acc = MultiPoly.zero()
        n = len(self.basis)
        for i in range(n):
            if a.coords[i].is_zero():
                continue
            for j in range(n):
                if b.coords[j].is_zero():
                    continue
                ab = a.coords[i] * b.coords[j]
                for k in range(n):
                    v = self.value(i, j, k)
                    if v and not c.coords[k].is_zero():
                        acc = acc + (ab * c.coords[k]).scale(v)
        return acc

    def cube(self, a: DivClass) -> MultiPoly:
        return self.triple(a, a, a)

    def curve(self, name: str) -> CurveRecord:
        return self.curves[name]

    def with_curve(self, name: str, pairings: Mapping[str, object] | Sequence, genus: int = 0) -> "ChowThreefold":
        rec = CurveRecord(name, self._pairing_tuple(pairings), genus)
        curves = dict(self.curves)
        curves[name] = rec
        return ChowThreefold(self.basis, self.tensor, self.canonical, curves, self._aliases, self.name)

    def intersection_curve(self, name: str, a: DivClass, b: DivClass, genus: int = 0) -> "ChowThreefold":
        """Record the complete-intersection curve ``a . b``."""
        pair = []
        for i in range(len(self.basis)):
            v = self.triple(self.cls(self.basis[i]), a, b)
            if not v.is_constant():
                raise ValueError("curve pairings must be numeric")
            pair.append(v.constant_term().a)
        return self.with_curve(name, pair, genus)

    def _pairing_tuple(self, pairings) -> tuple:
        if isinstance(pairings, Mapping):
            unknown = set(pairings) - set(self.basis)
            if unknown:
                raise KeyError(f"pairings with unknown divisors {sorted(unknown)}")
            missing = set(self.basis) - set(pairings)
            if missing:
                raise ValueError(f"curve pairings missing for {sorted(missing)}")
            return tuple(as_fraction(pairings[b]) for b in self.basis)
        vals = tuple(as_fraction(x) for x in pairings)
        if len(vals) != len(self.basis):
            raise ValueError("one pairing per basis divisor is required")
        return vals

    def canonical_degree(self, curve: CurveRecord) -> Fraction:
        return sum((k * p for k, p in zip(self.canonical, curve.pairings)), Fraction(0))

    def is_symmetric(self) -> bool:
        n = len(self.basis)
        return all(
            self.value(*p) == self.value(i, j, k)
            for i, j, k in itertools.product(range(n), repeat=3)
            for p in itertools.permutations((i, j, k))
        )

    def __repr__(self):
        return f"ChowThreefold({self.name or '?'}, basis={self.basis})"


# -- constructions -----------------------------------------------------------

def complete_intersection(factor_dims: Sequence[int], multidegrees: Sequence[Sequence[int]],
                          names: Sequence[str] | None = None, name: str = "") -> ChowThreefold:
    """Complete intersection threefold in a product of projective spaces.

    ``h_i^(dim_i + 1) = 0`` in the ambient ring; the tensor entry for
    ``(i, j, k)`` is the coefficient of the top class in
    ``h_i h_j h_k * prod(sum_l d_l h_l)``.  The canonical class follows from
    adjunction.
    """
    dims = tuple(int(d) for d in factor_dims)
    eqs = [tuple(int(x) for x in d) for d in multidegrees]
    if any(len(d) != len(dims) for d in eqs):
        raise ValueError("each multidegree needs one entry per factor")
    if sum(dims) - len(eqs) != 3:
        raise ValueError(f"ambient dimension {sum(dims)} cut by {len(eqs)} equations is not a threefold")
    r = len(dims)
    names = tuple(names) if names else tuple(f"h{i + 1}" for i in range(r))
    if len(names) != r:
        raise ValueError("one name per factor is required")

    # expand prod of equation classes as {exponent vector: coefficient}
    poly = {tuple([0] * r): 1}
    for d in eqs:
        nxt: dict[tuple, int] = {}
        for e, c in poly.items():
            for l, dl in enumerate(d):
                if dl:
                    e2 = list(e)
                    e2[l] += 1
                    e2 = tuple(e2)
                    nxt[e2] = nxt.get(e2, 0) + c * dl
        poly = nxt
    tensor = {}
    for i, j, k in itertools.combinations_with_replacement(range(r), 3):
        total = 0
        for e, c in poly.items():
            e2 = list(e)
            for t in (i, j, k):
                e2[t] += 1
            if tuple(e2) == dims:
                total += c
        if total:
            tensor[(i, j, k)] = Fraction(total)
    canonical = [-(dims[l] + 1) + sum(d[l] for d in eqs) for l in range(r)]
    return ChowThreefold(names, tensor, canonical, name=name)


def product_hypersurface(factor_dims: Sequence[int], multidegree: Sequence[int],
                         names: Sequence[str] | None = None, name: str = "") -> ChowThreefold:
    return complete_intersection(factor_dims, [multidegree], names=names, name=name)


def blowup_curve(ring: ChowThreefold, curve_name: str, genus: int | None = None,
                 pairings: Mapping[str, object] | Sequence | None = None, KdotZ=None,
                 exceptional: str = "E", name: str = "") -> ChowThreefold:
    """Blow up a smooth curve ``Z`` given by its pairings with the basis.

    ``f*A f*B E = 0``, ``f*A E^2 = -(A.Z)``, ``E^3 = 2 - 2g + K.Z``,
    ``K' = f*K + E``.  A supplied ``KdotZ`` must agree with the canonical
    class paired against ``Z``.
    """
    if exceptional in ring.names():
        raise ValueError(f"name {exceptional!r} already used")
    if pairings is None:
        rec = ring.curve(curve_name)
        if genus is not None and genus != rec.genus:
            raise ValueError("genus disagrees with the curve ledger")
    else:
        rec = CurveRecord(curve_name, ring._pairing_tuple(pairings), 0 if genus is None else genus)
    g = rec.genus
    if g < 0:
        raise ValueError("genus must be non-negative")
    kz = ring.canonical_degree(rec)
    if KdotZ is not None and as_fraction(KdotZ) != kz:
        raise ValueError(f"K.Z = {as_fraction(KdotZ)} given but the canonical class gives {kz}")
    n = len(ring.basis)
    tensor = dict(ring.tensor)
    for i in range(n):
        if rec.pairings[i]:
            tensor[(i, n, n)] = -rec.pairings[i]
    tensor[(n, n, n)] = Fraction(2 - 2 * g) + kz
    basis = ring.basis + (exceptional,)
    canonical = ring.canonical + (Fraction(1),)
    fiber = CurveRecord(f"{exceptional}.fiber", tuple([Fraction(0)] * n) + (Fraction(-1),), 0)
    curves = {fiber.name: fiber}
    return ChowThreefold(basis, tensor, canonical, curves, ring._aliases, name or f"Bl_{curve_name}({ring.name})")


def normal_bundle_degree(KdotZ, genus: int) -> Fraction:
    """``deg N_{Z/X} = -K.Z + 2g - 2``."""
    return -as_fraction(KdotZ) + 2 * genus - 2


def weighted_log_discrepancy(wA, wB, AA, AB):
    """``wA * A(D_A) + wB * A(D_B)`` for a weighted blow-up of ``D_A . D_B``."""
    for w in (wA, wB):
        if not isinstance(w, MultiPoly) and as_fraction(w) < 1:
            raise ValueError("weights must be at least 1")
    for a in (AA, AB):
        if as_fraction(a) < 1:
            raise ValueError("log discrepancies of the two surfaces must be at least 1")
    if isinstance(wA, MultiPoly) or isinstance(wB, MultiPoly):
        wA = wA if isinstance(wA, MultiPoly) else MultiPoly.constant(wA)
        return wA.scale(as_fraction(AA)) + (wB if isinstance(wB, MultiPoly) else MultiPoly.constant(wB)).scale(
            as_fraction(AB)
        )
    return as_fraction(wA) * as_fraction(AA) + as_fraction(wB) * as_fraction(AB)


def riemann_roch_anticanonical(minus_K_cube) -> int:
    """``h^0(-K) = (-K)^3 / 2 + 3`` for a weak Fano threefold."""
    v = as_fraction(minus_K_cube) / 2 + 3
    if v.denominator != 1:
        raise ValueError(f"(-K)^3 = {minus_K_cube} gives a non-integral h^0")
    return int(v)


def numeric(p: MultiPoly | Cyclotomic | Fraction | int) -> Fraction:
    """Rational value of a constant polynomial."""
    if isinstance(p, MultiPoly):
        if not p.is_constant():
            raise ValueError(f"{p} is not constant")
        p = p.constant_term()
    if isinstance(p, Cyclotomic):
        return as_fraction(p)
    return as_fraction(p)


def build_ring(steps: Sequence[Mapping]) -> ChowThreefold:
    """Build a ring from JSON-style steps.

    Supported ops: ``complete_intersection``, ``product_hypersurface``,
    ``define`` (alias), ``intersection_curve``, ``curve`` (explicit pairings),
    and ``blowup_curve``.
    """
    ring: ChowThreefold | None = None
    for step in steps:
        op = step["op"]
        if op == "complete_intersection":
            ring = complete_intersection(step["dims"], step["degrees"], step.get("names"), step.get("name", ""))
        elif op == "product_hypersurface":
            ring = product_hypersurface(step["dims"], step["degree"], step.get("names"), step.get("name", ""))
        elif ring is None:
            raise ValueError(f"step {op!r} needs a ring")
        elif op == "define":
            ring = ring.define(step["name"], step["class"])
        elif op == "intersection_curve":
            a, b = (ring.parse_class(t) for t in step["of"])
            ring = ring.intersection_curve(step["name"], a, b, step.get("genus", 0))
        elif op == "curve":
            ring = ring.with_curve(step["name"], step["pairings"], step.get("genus", 0))
        elif op == "blowup_curve":
            ring = blowup_curve(ring, step["curve"], step.get("genus"), step.get("pairings"), step.get("KdotZ"),
                                step.get("exceptional", "E"), step.get("name", ""))
        else:
            raise ValueError(f"unknown ring step {op!r}")
    if ring is None:
        raise ValueError("empty recipe")
    return ring
