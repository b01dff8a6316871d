"""Hirzebruch surfaces and chains of blow-ups of invariant curves.

Classes on ``F_n`` are written ``a*s + b*f`` where ``s`` is the negative
section (``s^2 = -n``) and ``f`` a fiber.  Coefficients may be integers,
fractions or polynomials in formal parameters.

The chain machinery tracks, after each blow-up, the two invariant curves
on the newest exceptional surface together with their self-intersections on
that surface and on the neighbouring surface they lie on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .chow import ChowThreefold, DivClass, numeric
from .exactnum import as_fraction
from .polylin.poly import MultiPoly


def _lift(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.constant(as_fraction(x))


def _lower(p: MultiPoly):
    return numeric(p) if p.is_constant() else p


@dataclass(frozen=True)
class RuledClass:
    n: int
    s: object = 0
    f: object = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")

    def __add__(self, other: "RuledClass") -> "RuledClass":
        _same_n(self, other)
        return RuledClass(self.n, _lower(_lift(self.s) + _lift(other.s)), _lower(_lift(self.f) + _lift(other.f)))

    def __sub__(self, other: "RuledClass") -> "RuledClass":
        return self + other.scaled(-1)

    def scaled(self, k) -> "RuledClass":
        k = _lift(k)
        return RuledClass(self.n, _lower(_lift(self.s) * k), _lower(_lift(self.f) * k))

    def __str__(self):
        return f"({self.s})*s + ({self.f})*f on F_{self.n}"


def _same_n(a: RuledClass, b: RuledClass):
    if a.n != b.n:
        raise ValueError(f"classes on F_{a.n} and F_{b.n} cannot be paired")


def ruled_pair(a: RuledClass, b: RuledClass):
    """``a_s b_f + a_f b_s - n a_s b_s``."""
    _same_n(a, b)
    as_, af, bs, bf = (_lift(x) for x in (a.s, a.f, b.s, b.f))
    return _lower(as_ * bf + af * bs - (as_ * bs).scale(a.n))


def h0_ruled(n: int, a: int, b: int) -> int:
    """``h^0(O(a s + b f))`` on ``F_n`` for ``a >= 0``: sum of ``h^0(O(b - k n))`` on P^1."""
    if a < 0:
        return 0
    return sum(max(0, b - k * n + 1) for k in range(a + 1))


def exceptional_type(self_in_surface, surface_dot_curve) -> int:
    """``n`` with the exceptional divisor over ``Z`` isomorphic to ``F_n``.

    For ``Z`` on a smooth surface ``S`` the normal bundle splits as
    ``N_{Z/S} + N_{S/X}|_Z`` with degrees ``Z^2_S`` and ``S.Z``.
    """
    return abs(int(as_fraction(self_in_surface) - as_fraction(surface_dot_curve)))


def restrict_to_exceptional(ring: ChowThreefold, cls: DivClass, exceptional: str, n: int) -> RuledClass:
    """Restriction of ``cls`` to the exceptional divisor ``F`` of a curve blow-up, ``F = F_n``.

    ``f*A|_F = (A.Z) f`` and ``F|_F = -(s + a f)`` with ``F^3 = 2a - n``;
    ``A.Z`` is read off from ``f*A . F^2 = -(A.Z)``.
    """
    if cls.ring.basis != ring.basis:
        raise ValueError("class does not belong to this ring")
    k = ring.basis.index(exceptional)
    F = ring.cls(exceptional)
    twice_a = numeric(ring.cube(F)) + n
    if twice_a.denominator != 1 or twice_a % 2:
        raise ValueError(f"F^3 = {numeric(ring.cube(F))} is incompatible with F_{n}")
    a = twice_a // 2
    f_coeff = MultiPoly.zero()
    for i, c in enumerate(cls.coords):
        if i == k or c.is_zero():
            continue
        AZ = -numeric(ring.triple(ring.cls(ring.basis[i]), F, F))
        f_coeff = f_coeff + c.scale(AZ)
    cF = cls.coords[k]
    return RuledClass(n, _lower(-cF), _lower(f_coeff - cF.scale(a)))


# -- blow-up chains -----------------------------------------------------------

def blowup_lemma(alpha, beta) -> tuple[int, int, int]:
    """Blow up ``Z = A . B`` with ``Z^2_A = alpha`` and ``Z^2_B = beta``.

    Returns ``(n, q_A, q_B)``: the exceptional surface is ``F_n`` with
    ``n = |alpha - beta|``, and the curves ``F . A~`` and ``F . B~`` have
    self-intersections ``q_A = beta - alpha`` and ``q_B = alpha - beta`` on it.
    """
    alpha, beta = int(alpha), int(beta)
    return abs(alpha - beta), beta - alpha, alpha - beta


@dataclass(frozen=True)
class CurveRec:
    self_on_f: int
    partner: str
    self_on_partner: int


@dataclass(frozen=True)
class ChainState:
    n: int
    curves: tuple
    depth: int = 1
    surface: str = "F1"

    def validate(self) -> None:
        if len(self.curves) != 2:
            raise AssertionError("exactly two invariant curves expected")
        if sorted(c.self_on_f for c in self.curves) != [-self.n, self.n]:
            raise AssertionError(f"squares on F are not +-{self.n}")
        for c in self.curves:
            if c.self_on_f == self.n and self.n != 0 and c.self_on_partner > 0:
                raise AssertionError("sign rule fails for the +n curve")
            if c.self_on_f == -self.n and self.n != 0 and c.self_on_partner <= 0:
                raise AssertionError("sign rule fails for the -n curve")
        if self.n == 0:
            raise AssertionError("exceptional surface is F_0")

    def key(self) -> tuple:
        return (self.n, tuple(sorted((c.self_on_f, c.self_on_partner) for c in self.curves)))


def base_state(alpha: int = 0, beta: int = 2, a_name: str = "E", b_name: str = "R~") -> ChainState:
    n, qa, qb = blowup_lemma(alpha, beta)
    return ChainState(n, (CurveRec(qa, a_name, alpha), CurveRec(qb, b_name, beta)), depth=1, surface="F1")


def chain_step(state: ChainState, index: int) -> ChainState:
    """Blow up the chosen invariant curve of the newest exceptional surface."""
    c = state.curves[index]
    alpha, gamma = c.self_on_f, c.self_on_partner
    n, q_old, q_partner = blowup_lemma(alpha, gamma)
    name = f"F{state.depth + 1}"
    curves = (CurveRec(q_old, state.surface, alpha), CurveRec(q_partner, c.partner, gamma))
    return ChainState(n, curves, depth=state.depth + 1, surface=name)


def replay(path: Iterable[int], start: ChainState | None = None) -> ChainState:
    st = start or base_state()
    for i in path:
        st = chain_step(st, i)
    return st


def enumerate_chain(depth: int = 10, start: ChainState | None = None) -> dict[int, list[ChainState]]:
    """Distinct states (up to numeric data) reachable at each depth ``1..depth``."""
    st = start or base_state()
    levels = {1: [st]}
    frontier = [st]
    for d in range(2, depth + 1):
        seen: dict[tuple, ChainState] = {}
        for s in frontier:
            for i in (0, 1):
                t = chain_step(s, i)
                seen.setdefault(t.key(), t)
        frontier = [seen[k] for k in sorted(seen)]
        levels[d] = frontier
    return levels


def check_chain(depth: int = 10) -> tuple[int, int]:
    """Validate every reachable state; returns (number of states, largest n)."""
    levels = enumerate_chain(depth)
    count, top = 0, 0
    for states in levels.values():
        for s in states:
            s.validate()
            count += 1
            top = max(top, s.n)
    return count, top
