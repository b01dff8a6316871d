"""Piecewise Zariski decompositions along a ray, volumes, S- and beta-invariants.

A :class:`RayCertificate` lists, for a partition of ``[0, tau]``, the negative
part of ``L - xE`` as classes with affine coefficients ``c0 + c1 x``.  The
checker does not search for decompositions; it verifies everything the ring
data can decide (partition, nonnegative coefficients, continuity, monotone
volume, ``vol(0) = L^3``, ``vol(tau) = 0``) and integrates exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chow import ChowThreefold, DivClass, numeric
from .exactnum import as_fraction
from .polylin.parse import parse_poly
from .polylin.poly import MultiPoly

X = "x"


class CertificateError(ValueError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class NegTerm:
    cls: DivClass
    c0: Fraction
    c1: Fraction
    label: str = ""

    def coeff(self) -> MultiPoly:
        return MultiPoly.var(X, (X,)).scale(self.c1) + MultiPoly.constant(self.c0, (X,))

    def at(self, x: Fraction) -> Fraction:
        return self.c0 + self.c1 * x


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    neg: tuple = ()


def _coeffs(p: MultiPoly) -> list[Fraction]:
    """Coefficients of a polynomial in ``x`` alone, lowest degree first."""
    p = p.with_variables((X,)) if set(p.used_variables()) <= {X} else None
    if p is None:
        raise ValueError("expected a polynomial in x only")
    d = p.degree(X) if not p.is_zero() else 0
    out = [Fraction(0)] * (max(d, 0) + 1)
    for (e,), c in p.terms.items():
        out[e] = as_fraction(c)
    return out


def _eval(cs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _antiderivative(cs: Sequence[Fraction]) -> list[Fraction]:
    return [Fraction(0)] + [c / (k + 1) for k, c in enumerate(cs)]


def integrate(p: MultiPoly, lo, hi) -> Fraction:
    F = _antiderivative(_coeffs(p))
    return _eval(F, as_fraction(hi)) - _eval(F, as_fraction(lo))


def _nonincreasing(cs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> bool:
    """Derivative of a cubic is <= 0 on [lo, hi]: endpoints plus interior critical point."""
    d = [k * c for k, c in enumerate(cs)][1:]
    pts = [lo, hi]
    if len(d) >= 3 and d[2]:
        v = -d[1] / (2 * d[2])
        if lo < v < hi:
            pts.append(v)
    if len(d) > 3:
        raise ValueError("volume polynomial has degree above 3")
    return all(_eval(d, t) <= 0 for t in pts)


class RayCertificate:
    def __init__(self, ring: ChowThreefold, L: DivClass, E: DivClass, tau, intervals: Sequence[Interval],
                 A=None, test_curves: Sequence[str] = (), name: str = ""):
        self.ring = ring
        self.L = L
        self.E = E
        self.tau = as_fraction(tau)
        self.intervals = tuple(intervals)
        self.A = None if A is None else as_fraction(A)
        self.test_curves = tuple(test_curves)
        self.name = name
        self._pieces: list[MultiPoly] | None = None
        self._valid = False
        for c in (L, E):
            if c.ring.basis != ring.basis:
                raise ValueError("certificate classes must live on the certificate ring")

    def positive_part(self, k: int) -> DivClass:
        x = MultiPoly.var(X, (X,))
        P = self.L - self.E * x
        for t in self.intervals[k].neg:
            P = P - t.cls * t.coeff()
        return P

    def volume_polynomial(self, k: int) -> MultiPoly:
        return self.ring.cube(self.positive_part(k)).with_variables((X,))

    def volume_pieces(self) -> list[MultiPoly]:
        if self._pieces is None:
            self._pieces = [self.volume_polynomial(k) for k in range(len(self.intervals))]
        return list(self._pieces)

    def L_cube(self) -> Fraction:
        return numeric(self.ring.cube(self.L))

    def validate(self) -> None:
        if not self._valid:
            self._validate()
            self._valid = True

    def _validate(self) -> None:
        if self.tau < 0:
            raise CertificateError("partition", "tau is negative")
        if self.tau == 0:
            if self.intervals:
                raise CertificateError("partition", "tau = 0 admits no intervals")
            return
        if not self.intervals:
            raise CertificateError("partition", "no intervals")
        if self.intervals[0].lo != 0 or self.intervals[-1].hi != self.tau:
            raise CertificateError("partition", "intervals do not cover [0, tau]")
        for a, b in zip(self.intervals, self.intervals[1:]):
            if a.hi != b.lo:
                raise CertificateError("partition", f"gap or overlap at {a.hi}/{b.lo}")
        for iv in self.intervals:
            if not iv.lo < iv.hi:
                raise CertificateError("partition", f"empty interval [{iv.lo}, {iv.hi}]")
            for t in iv.neg:
                if t.at(iv.lo) < 0 or t.at(iv.hi) < 0:
                    raise CertificateError("nonnegative-coefficients",
                                           f"{t.label or t.cls} has a negative coefficient on [{iv.lo}, {iv.hi}]")
        pieces = [_coeffs(p) for p in self.volume_pieces()]
        for cs in pieces:
            if len(cs) > 4:
                raise CertificateError("degree", "volume piece has degree above 3")
        if _eval(pieces[0], Fraction(0)) != self.L_cube():
            raise CertificateError("vol(0)", f"vol(0) = {_eval(pieces[0], Fraction(0))} but L^3 = {self.L_cube()}")
        for k in range(len(pieces) - 1):
            x0 = self.intervals[k].hi
            if _eval(pieces[k], x0) != _eval(pieces[k + 1], x0):
                raise CertificateError("continuity", f"volume jumps at x = {x0}")
        if _eval(pieces[-1], self.tau) != 0:
            raise CertificateError("vol(tau)", f"vol(tau) = {_eval(pieces[-1], self.tau)}")
        for iv, cs in zip(self.intervals, pieces):
            if not _nonincreasing(cs, iv.lo, iv.hi):
                raise CertificateError("monotonicity", f"volume increases somewhere on [{iv.lo}, {iv.hi}]")

    def nef_evidence(self) -> list[tuple[str, int, bool]]:
        """Pairings of positive parts with the test curves at interval ends (evidence only)."""
        out = []
        for k, iv in enumerate(self.intervals):
            P = self.positive_part(k)
            for name in self.test_curves:
                v = _coeffs(P.dot_curve(self.ring.curve(name)).with_variables((X,)))
                out.append((name, k, _eval(v, iv.lo) >= 0 and _eval(v, iv.hi) >= 0))
        return out

    def rescale(self, c) -> "RayCertificate":
        """Certificate for the ray of ``E / c``: interval ends and slopes scale by ``c``."""
        c = as_fraction(c)
        if c <= 0:
            raise ValueError("scale must be positive")
        ivs = [Interval(iv.lo * c, iv.hi * c, tuple(NegTerm(t.cls, t.c0, t.c1 / c, t.label) for t in iv.neg))
               for iv in self.intervals]
        return RayCertificate(self.ring, self.L, self.E * (1 / c), self.tau * c, ivs, self.A, self.test_curves,
                              self.name)


@dataclass(frozen=True)
class SBetaResult:
    S: Fraction
    A: Fraction
    beta: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "beta", self.A - self.S)


def s_value(cert: RayCertificate) -> Fraction:
    cert.validate()
    if cert.tau == 0:
        return Fraction(0)
    total = sum((integrate(p, iv.lo, iv.hi) for p, iv in zip(cert.volume_pieces(), cert.intervals)), Fraction(0))
    return total / cert.L_cube()


def s_partial(cert: RayCertificate, t) -> Fraction:
    """``(1/L^3) * integral_0^t vol dx``."""
    t = as_fraction(t)
    if not 0 <= t <= cert.tau:
        raise ValueError(f"t = {t} outside [0, {cert.tau}]")
    cert.validate()
    total = Fraction(0)
    for p, iv in zip(cert.volume_pieces(), cert.intervals):
        if t <= iv.lo:
            break
        total += integrate(p, iv.lo, min(t, iv.hi))
    return total / cert.L_cube()


def beta(cert: RayCertificate, A=None) -> SBetaResult:
    A = cert.A if A is None else as_fraction(A)
    if A is None:
        raise ValueError("log discrepancy is required")
    return SBetaResult(s_value(cert), A)


def beta_lower_bound(A, bounds: Sequence[tuple]) -> Fraction:
    """``A - sum(multiplier * S)`` for an upper bound ``S(F) <= sum(multiplier * S)``."""
    return as_fraction(A) - sum((as_fraction(m) * as_fraction(s) for m, s in bounds), Fraction(0))


# -- positivity of affine forms on plane regions ----------------------------

_CONSTRAINT = re.compile(r"^(.*?)(>=|>|<=|<)(.*)$")


@dataclass(frozen=True)
class HalfPlane:
    """``pa*a + pb*b + p0 >= 0`` (or ``> 0`` when strict)."""

    pa: Fraction
    pb: Fraction
    p0: Fraction
    strict: bool = False

    def value(self, pt) -> Fraction:
        return self.pa * pt[0] + self.pb * pt[1] + self.p0

    def slope(self, d) -> Fraction:
        return self.pa * d[0] + self.pb * d[1]


def _affine(text: str, variables=("a", "b")) -> tuple[Fraction, Fraction, Fraction]:
    p = parse_poly(text, variables)
    if p.total_degree() > 1:
        raise ValueError(f"{text!r} is not affine")
    c = {k: as_fraction(v) for k, v in p.terms.items()}
    return c.get((1, 0), Fraction(0)), c.get((0, 1), Fraction(0)), c.get((0, 0), Fraction(0))


def parse_constraint(text: str) -> HalfPlane:
    m = _CONSTRAINT.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse constraint {text!r}")
    lhs, op, rhs = m.groups()
    la, lb, l0 = _affine(lhs)
    ra, rb, r0 = _affine(rhs)
    if op in (">=", ">"):
        return HalfPlane(la - ra, lb - rb, l0 - r0, op == ">")
    return HalfPlane(ra - la, rb - lb, r0 - l0, op == "<")


@dataclass
class ConeVerdict:
    positive: bool
    vertices: list
    rays: list
    witness: object = None

    def __bool__(self):
        return self.positive


def _solve2(h1: HalfPlane, h2: HalfPlane):
    d = h1.pa * h2.pb - h1.pb * h2.pa
    if d == 0:
        return None
    a = (-h1.p0 * h2.pb + h1.pb * h2.p0) / d
    b = (-h1.pa * h2.p0 + h1.p0 * h2.pa) / d
    return (a, b)


def cone_positive(form: str, constraints: Sequence[str | HalfPlane]) -> ConeVerdict:
    """Whether an affine form in ``(a, b)`` is strictly positive on a polyhedral region.

    The closure of the region is described by its vertices and extreme
    recession rays.  The form is positive iff it is nondecreasing along every
    ray and positive at every vertex, except that zeros are allowed on a face
    that a single strict constraint removes entirely.
    """
    hs = [c if isinstance(c, HalfPlane) else parse_constraint(c) for c in constraints]
    fa, fb, f0 = _affine(form)
    verts = []
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            pt = _solve2(hs[i], hs[j])
            if pt is not None and all(h.value(pt) >= 0 for h in hs) and pt not in verts:
                verts.append(pt)
    rays = []
    for h in hs:
        for d in ((-h.pb, h.pa), (h.pb, -h.pa)):
            if all(k.slope(d) >= 0 for k in hs) and d not in rays and d != (0, 0):
                if not any(r[0] * d[1] == r[1] * d[0] and r[0] * d[0] + r[1] * d[1] > 0 for r in rays):
                    rays.append(d)
    verts.sort()
    rays.sort()
    if not verts:
        raise ValueError("region has no vertices")
    for d in rays:
        if fa * d[0] + fb * d[1] < 0:
            return ConeVerdict(False, verts, rays, ("ray", d))
    vals = [fa * a + fb * b + f0 for a, b in verts]
    low = min(vals)
    if low < 0:
        return ConeVerdict(False, verts, rays, ("vertex", verts[vals.index(low)]))
    if low > 0:
        return ConeVerdict(True, verts, rays)
    zero_v = [v for v, val in zip(verts, vals) if val == 0]
    zero_r = [d for d in rays if fa * d[0] + fb * d[1] == 0]
    for h in hs:
        if h.strict and all(h.value(v) == 0 for v in zero_v) and all(h.slope(d) == 0 for d in zero_r):
            return ConeVerdict(True, verts, rays)
    return ConeVerdict(False, verts, rays, ("vertex", zero_v[0]))
