"""Standard-form cocycles of dualisable dynamical triples and their duality.

A :class:`DynCocycle` is ``(chi, c, m, w)`` on either the torus or the dual
torus side.  ``psi(a,b,z) = c(a,b) + m(a,b).z`` is a 2-cocycle for the module
M_chi and ``phi(a,g) = <w(a), g>`` is its companion frequency.  All tables
are nested tuples indexed ``[a][b]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .arith import (
    ZERO,
    QVec,
    ZVec,
    is_integral,
    pair,
    pair_lift,
    reduce_mod1,
    to_zvec,
    torus_point,
    vadd,
    vneg,
    vsub,
)
from .cohomology import Cochain, character_module, solve_coboundary, trivial_module
from .groups import FiniteGroup, TorusHom, flip_side


class InvalidCocycle(ValueError):
    pass


Table2 = Tuple[Tuple, ...]


@dataclass(frozen=True, eq=False)
class DynCocycle:
    hom: TorusHom
    c: Tuple[Tuple[Fraction, ...], ...]
    m: Tuple[Tuple[ZVec, ...], ...]
    w: Tuple[QVec, ...]
    side: str = "torus"

    @property
    def group(self) -> FiniteGroup:
        return self.hom.group

    @property
    def rank(self) -> int:
        return self.hom.rank

    def __eq__(self, other):
        return (
            isinstance(other, DynCocycle)
            and self.hom == other.hom
            and self.c == other.c
            and self.m == other.m
            and self.w == other.w
            and self.side == other.side
        )

    def __hash__(self):
        return hash((self.c, self.m, self.w))

    def psi(self) -> Cochain:
        return psi_cochain(self.hom, self.c, self.m)


def make_dyn(hom: TorusHom, c=None, m=None, w=None, side: Optional[str] = None) -> DynCocycle:
    """Build a DynCocycle from callables, nested tables or None (all zero).

    Circle values are reduced mod 1; nothing is validated here.
    """
    G, n = hom.group, hom.rank
    elems = G.elements

    def table2(src, conv, zero):
        if src is None:
            return tuple(tuple(zero for _ in elems) for _ in elems)
        if callable(src):
            return tuple(tuple(conv(src(a, b)) for b in elems) for a in elems)
        return tuple(tuple(conv(src[a][b]) for b in elems) for a in elems)

    ct = table2(c, reduce_mod1, ZERO)
    mt = table2(m, lambda v: tuple(int(x) for x in v), (0,) * n)
    if w is None:
        wt = tuple((ZERO,) * n for _ in elems)
    elif callable(w):
        wt = tuple(tuple(Fraction(x) for x in w(a)) for a in elems)
    else:
        wt = tuple(tuple(Fraction(x) for x in w[a]) for a in elems)
    return DynCocycle(hom, ct, mt, wt, side if side is not None else hom.side)


def psi_cochain(hom: TorusHom, c: Table2, m: Table2) -> Cochain:
    module = character_module(hom)
    G = hom.group
    consts = tuple(c[a][b] for a in G.elements for b in G.elements)
    chars = tuple(tuple(m[a][b]) for a in G.elements for b in G.elements)
    return Cochain(module, 2, consts, chars)


def tables_from_cochain(f: Cochain):
    G = f.group
    N = G.size
    c = tuple(tuple(f.const[a * N + b] for b in G.elements) for a in G.elements)
    m = tuple(tuple(f.chars[a * N + b] for b in G.elements) for a in G.elements)
    return c, m


@dataclass(frozen=True)
class Validation:
    ok: bool
    condition: Optional[str] = None
    where: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        if self.ok:
            return {"valid": True}
        return {"valid": False, "condition": self.condition, "where": list(self.where or ()), "detail": self.detail}


def _check_shapes(d: DynCocycle) -> None:
    G, n = d.group, d.rank
    N = G.size
    if len(d.c) != N or any(len(r) != N for r in d.c):
        raise InvalidCocycle("c table has the wrong shape")
    if len(d.m) != N or any(len(r) != N or any(len(v) != n for v in r) for r in d.m):
        raise InvalidCocycle("m table has the wrong shape")
    if len(d.w) != N or any(len(v) != n for v in d.w):
        raise InvalidCocycle("w table has the wrong shape")
    if d.side not in ("torus", "dual-torus"):
        raise InvalidCocycle(f"unknown side {d.side!r}")


def validate_dyn(d: DynCocycle) -> Validation:
    """Check normalization and conditions (A), (B), (C); report the first failure."""
    _check_shapes(d)
    G = d.group
    mul = G.mul
    c, m, w = d.c, d.m, d.w
    zero = (0,) * d.rank
    if any(x != 0 for x in w[0]):
        return Validation(False, "normalization", (0,), "w(e) must vanish")
    for a in G.elements:
        if c[0][a] != 0 or c[a][0] != 0 or m[0][a] != zero or m[a][0] != zero:
            return Validation(False, "normalization", (a,), "c and m must vanish on the identity")
    for a, b, x in itertools.product(G.elements, repeat=3):
        ba, xb = mul[b][a], mul[x][b]
        lhs = vadd(vsub(m[b][x], m[ba][x]), vsub(m[a][xb], m[a][b]))
        if any(lhs):
            return Validation(False, "A", (a, b, x), f"lattice part of delta(psi) is {list(lhs)}")
    chi = d.hom
    for a, b, x in itertools.product(G.elements, repeat=3):
        ba, xb = mul[b][a], mul[x][b]
        val = reduce_mod1(c[b][x] + pair(m[b][x], chi(a)) - c[ba][x] + c[a][xb] - c[a][b])
        if val != 0:
            return Validation(False, "B", (a, b, x), f"circle part of delta(psi) is {val}")
    for a, b in itertools.product(G.elements, repeat=2):
        lhs = vadd(vsub(w[b], w[mul[b][a]]), w[a])
        if lhs != tuple(Fraction(x) for x in m[a][b]):
            return Validation(False, "C", (a, b), "delta(w) differs from m")
    return Validation(True)


def require_valid(d: DynCocycle) -> None:
    v = validate_dyn(d)
    if not v:
        raise InvalidCocycle(f"invalid cocycle: condition {v.condition} fails at {v.where}: {v.detail}")


def dual_hom(d: DynCocycle) -> TorusHom:
    """chihat(a) = -w(a) mod 1, on the opposite side."""
    return TorusHom(d.group, d.rank, tuple(torus_point(vneg(x)) for x in d.w), flip_side(d.side))


def dualize(d: DynCocycle) -> DynCocycle:
    require_valid(d)
    G = d.group
    chi = d.hom
    chihat = dual_hom(d)
    lift = [chi.lift(a) for a in G.elements]
    mul = G.mul
    c_new, m_new = [], []
    for a in G.elements:
        rc, rm = [], []
        for b in G.elements:
            ba = mul[b][a]
            e = to_zvec(vsub(vsub(lift[ba], lift[a]), lift[b]))
            rc.append(reduce_mod1(d.c[a][b] - pair_lift(d.w[b], lift[a]) + pair(e, chihat(ba))))
            rm.append(e)
        c_new.append(tuple(rc))
        m_new.append(tuple(rm))
    w_new = tuple(vneg(lift[a]) for a in G.elements)
    return DynCocycle(chihat, tuple(c_new), tuple(m_new), w_new, chihat.side)


@dataclass(frozen=True, eq=False)
class DynWitness:
    """A coboundary (k, t) relating two DynCocycles: d2 = d1 + delta(k + t.z)."""

    k: Tuple[Fraction, ...]
    t: Tuple[ZVec, ...]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.k) and all(not any(v) for v in self.t)


def apply_coboundary(d: DynCocycle, k: Sequence, t: Sequence) -> DynCocycle:
    """Modify d by the 1-cochain (k, t): c += dk + t(b).chi(a), m += dt, w += t."""
    G = d.group
    mul = G.mul
    chi = d.hom
    k = [reduce_mod1(x) for x in k]
    t = [tuple(int(y) for y in v) for v in t]
    if k[0] != 0 or any(t[0]):
        raise ValueError("coboundary cochain must be normalized")
    c_new = tuple(
        tuple(
            reduce_mod1(d.c[a][b] + k[b] + pair(t[b], chi(a)) - k[mul[b][a]] + k[a])
            for b in G.elements
        )
        for a in G.elements
    )
    m_new = tuple(
        tuple(tuple(p + q - r + s for p, q, r, s in zip(d.m[a][b], t[b], t[mul[b][a]], t[a])) for b in G.elements)
        for a in G.elements
    )
    w_new = tuple(vadd(d.w[a], t[a]) for a in G.elements)
    return DynCocycle(d.hom, c_new, m_new, w_new, d.side)


def is_cohomologous_dyn(d1: DynCocycle, d2: DynCocycle) -> Optional[DynWitness]:
    if d1.group != d2.group:
        raise ValueError("cocycles live on different groups")
    if d1.rank != d2.rank:
        raise ValueError("rank mismatch")
    if d1.hom != d2.hom:
        raise ValueError("homomorphism mismatch")
    if d1.side != d2.side:
        raise ValueError("side mismatch")
    require_valid(d1)
    require_valid(d2)
    G = d1.group
    mul = G.mul
    diff = [vsub(d2.w[a], d1.w[a]) for a in G.elements]
    if not all(is_integral(v) for v in diff):
        return None
    t = [to_zvec(v) for v in diff]
    for a, b in itertools.product(G.elements, repeat=2):
        dt = tuple(p - q + r for p, q, r in zip(t[b], t[mul[b][a]], t[a]))
        if vsub(d2.m[a][b], d1.m[a][b]) != dt:
            return None
    chi = d1.hom
    resid = Cochain.from_function(
        trivial_module(G),
        2,
        lambda a, b: d2.c[a][b] - d1.c[a][b] - pair(t[b], chi(a)),
    )
    k = solve_coboundary(resid)
    if k is None:
        return None
    return DynWitness(tuple(k.const), tuple(t))


def cohomologous_psi(hom: TorusHom, c1, m1, c2, m2) -> Optional[Cochain]:
    """Witness that two M_chi-standard 2-cocycles are cohomologous, or None."""
    f = psi_cochain(hom, c2, m2) - psi_cochain(hom, c1, m1)
    return solve_coboundary(f)


def tensor(d1: DynCocycle, d2: DynCocycle) -> DynCocycle:
    if d1.hom != d2.hom or d1.side != d2.side:
        raise ValueError("tensor needs the same homomorphism on the same side")
    G = d1.group
    E = G.elements
    return DynCocycle(
        d1.hom,
        tuple(tuple(reduce_mod1(d1.c[a][b] + d2.c[a][b]) for b in E) for a in E),
        tuple(tuple(vadd(d1.m[a][b], d2.m[a][b]) for b in E) for a in E),
        tuple(vadd(d1.w[a], d2.w[a]) for a in E),
        d1.side,
    )


def conjugate(d: DynCocycle) -> DynCocycle:
    E = d.group.elements
    return DynCocycle(
        d.hom,
        tuple(tuple(reduce_mod1(-d.c[a][b]) for b in E) for a in E),
        tuple(tuple(vneg(d.m[a][b]) for b in E) for a in E),
        tuple(vneg(d.w[a]) for a in E),
        d.side,
    )


@dataclass(frozen=True)
class MackeyObstruction:
    theta: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.theta)
        if any(len(r) != n for r in self.theta):
            raise ValueError("Mackey obstruction must be a square matrix")
        t = tuple(tuple(reduce_mod1(x) for x in r) for r in self.theta)
        object.__setattr__(self, "theta", t)
        for i in range(n):
            if t[i][i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) is nonzero")
            for j in range(i + 1, n):
                if reduce_mod1(t[i][j] + t[j][i]) != 0:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not antisymmetric")


def mackey_vanishes(theta: MackeyObstruction) -> bool:
    return all(x == 0 for r in theta.theta for x in r)
