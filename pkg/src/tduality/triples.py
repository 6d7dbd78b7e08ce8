"""Obstruction classes, topological triples of order L and the bridges to
dynamical triples.

Notation: ``eta`` is the Bockstein of chi, ``etahat`` that of chihat, and
``gamma(a,b) = <s(chihat(a)), s(chi(b))> - <etahat(a,b), chi(ba)>`` with ``s``
the fundamental-domain lift.  The bi-module M_chi M_chihat carries lattice
parts ``(u, v)`` against ``(z, zhat)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .arith import ZERO, QmodZ, pair, pair_lift, reduce_mod1, section_lift, tadd, torus_point, vneg, vsub, vscale
from .cohomology import (
    Cochain,
    bimodule,
    character_module,
    coboundary,
    is_cocycle,
    solve_coboundary,
    trivial_module,
)
from .duality import DynCocycle, dual_hom, dualize, psi_cochain, require_valid, tables_from_cochain
from .errors import InvariantBreach
from .groups import FiniteGroup, TorusHom, bockstein


class TripleError(ValueError):
    pass


def _check_pair(chi: TorusHom, chihat: TorusHom) -> None:
    if chi.group != chihat.group:
        raise ValueError("homomorphisms live on different groups")
    if chi.rank != chihat.rank:
        raise ValueError(f"rank mismatch: {chi.rank} != {chihat.rank}")


def gamma_table(chi: TorusHom, chihat: TorusHom):
    _check_pair(chi, chihat)
    key = ("gamma", chihat.images)
    if key not in chi._cache:
        chi._cache[key] = _gamma_table(chi, chihat)
    return chi._cache[key]


def _gamma_table(chi: TorusHom, chihat: TorusHom):
    G = chi.group
    etahat = bockstein(chihat)
    return tuple(
        tuple(
            reduce_mod1(pair_lift(chihat.lift(a), chi.lift(b)) - pair(etahat[a][b], chi(G.mul[b][a])))
            for b in G.elements
        )
        for a in G.elements
    )


@dataclass(frozen=True, eq=False)
class BiCocycle:
    chi: TorusHom
    chihat: TorusHom
    g: Tuple[Tuple[Fraction, ...], ...]
    u: Tuple[Tuple[Tuple[int, ...], ...], ...]
    v: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def group(self) -> FiniteGroup:
        return self.chi.group

    def cochain(self) -> Cochain:
        G = self.group
        E = G.elements
        return Cochain(
            bimodule(self.chi, self.chihat),
            2,
            tuple(self.g[a][b] for a in E for b in E),
            tuple(tuple(self.u[a][b]) + tuple(self.v[a][b]) for a in E for b in E),
        )

    def is_cocycle(self) -> bool:
        c = self.cochain()
        return c.is_normalized() and is_cocycle(c)

    def evaluate(self, a: int, b: int, z: Sequence, zhat: Sequence) -> QmodZ:
        return reduce_mod1(self.g[a][b] + pair(self.u[a][b], z) + pair(self.v[a][b], zhat))


def sqcup(chi: TorusHom, chihat: TorusHom) -> BiCocycle:
    _check_pair(chi, chihat)
    eta = bockstein(chi)
    etahat = bockstein(chihat)
    E = chi.group.elements
    return BiCocycle(
        chi,
        chihat,
        gamma_table(chi, chihat),
        tuple(tuple(vneg(etahat[a][b]) for b in E) for a in E),
        tuple(tuple(eta[a][b] for b in E) for a in E),
    )


def cup3(chi: TorusHom, chihat: TorusHom) -> Cochain:
    """(a,b,c) -> <eta(b,c), chihat(a)>."""
    _check_pair(chi, chihat)
    eta = bockstein(chi)
    return Cochain.from_function(trivial_module(chi.group), 3, lambda a, b, c: pair(eta[b][c], chihat(a)))


def cup3_alt(chi: TorusHom, chihat: TorusHom) -> Cochain:
    """The other route, (a,b,c) -> <etahat(b,c), chi(a)>."""
    _check_pair(chi, chihat)
    etahat = bockstein(chihat)
    return Cochain.from_function(trivial_module(chi.group), 3, lambda a, b, c: pair(etahat[b][c], chi(a)))


def connecting_C(b: BiCocycle, split: str = "psi") -> Cochain:
    """Image of a bi-module 2-cocycle under the Mayer-Vietoris connecting map.

    ``split="psi"`` puts the constant part with the z-characters and returns
    the coboundary of that summand; ``split="psihat"`` puts it with the
    zhat-characters and returns minus the coboundary of that summand.
    """
    if not b.is_cocycle():
        raise ValueError("input is not a normalized bi-module cocycle")
    G = b.group
    n = b.chi.rank
    E = G.elements
    if split == "psi":
        part = (b.g, b.u, tuple(tuple((0,) * n for _ in E) for _ in E))
        sign = 1
    elif split == "psihat":
        part = (b.g, tuple(tuple((0,) * n for _ in E) for _ in E), b.v)
        sign = -1
    else:
        raise ValueError(f"unknown split {split!r}")
    omega = BiCocycle(b.chi, b.chihat, *part).cochain()
    d = coboundary(omega)
    if any(any(x) for x in d.chars):
        raise InvariantBreach("lattice part of the connecting cocycle does not vanish")
    out = d.circle_part().scale(sign)
    if not is_cocycle(out):
        raise InvariantBreach("connecting map produced a non-cocycle")
    return out


def beta_eval(chi: TorusHom, chihat: TorusHom, a: int, z: Sequence, zhat: Sequence) -> QmodZ:
    _check_pair(chi, chihat)
    z = torus_point(z)
    zhat = torus_point(zhat)
    if len(z) != chi.rank or len(zhat) != chi.rank:
        raise ValueError("point has the wrong rank")
    sh = section_lift
    jump = vsub(vsub(sh(tadd(zhat, chihat(a))), sh(zhat)), chihat.lift(a))
    return reduce_mod1(pair_lift(jump, sh(tadd(z, chi(a)))) + pair_lift(sh(zhat), chi.lift(a)))


def delta_beta(chi: TorusHom, chihat: TorusHom, a: int, b: int, z: Sequence, zhat: Sequence) -> QmodZ:
    """(d beta)(a,b,z,zhat) = beta(b, z+chi(a), zhat+chihat(a)) - beta(ba,z,zhat) + beta(a,z,zhat)."""
    z = torus_point(z)
    zhat = torus_point(zhat)
    ba = chi.group.mul[b][a]
    return reduce_mod1(
        beta_eval(chi, chihat, b, tadd(z, chi(a)), tadd(zhat, chihat(a)))
        - beta_eval(chi, chihat, ba, z, zhat)
        + beta_eval(chi, chihat, a, z, zhat)
    )


@dataclass(frozen=True, eq=False)
class TopTriple:
    order: int
    chi: TorusHom
    chihat: TorusHom
    c: Tuple[Tuple[Fraction, ...], ...]
    m: Tuple[Tuple[Tuple[int, ...], ...], ...]
    chat: Tuple[Tuple[Fraction, ...], ...]
    mhat: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def group(self) -> FiniteGroup:
        return self.chi.group

    @property
    def rank(self) -> int:
        return self.chi.rank

    def psi(self) -> Cochain:
        return psi_cochain(self.chi, self.c, self.m)

    def psihat(self) -> Cochain:
        return psi_cochain(self.chihat, self.chat, self.mhat)

    def difference(self) -> Cochain:
        """[psi] (-) [psihat] as a bi-module cochain: (c - chat, m, -mhat)."""
        E = self.group.elements
        return Cochain(
            bimodule(self.chi, self.chihat),
            2,
            tuple(reduce_mod1(self.c[a][b] - self.chat[a][b]) for a in E for b in E),
            tuple(tuple(self.m[a][b]) + vneg(self.mhat[a][b]) for a in E for b in E),
        )

    def __eq__(self, other):
        return (
            isinstance(other, TopTriple)
            and self.order == other.order
            and self.chi == other.chi
            and self.chihat == other.chihat
            and self.c == other.c
            and self.m == other.m
            and self.chat == other.chat
            and self.mhat == other.mhat
        )

    def __hash__(self):
        return hash((self.order, self.c, self.chat))


def make_triple(order: int, chi: TorusHom, chihat: TorusHom, c=None, m=None, chat=None, mhat=None) -> TopTriple:
    _check_pair(chi, chihat)
    E = chi.group.elements
    n = chi.rank

    def t2(src, conv, zero):
        if src is None:
            return tuple(tuple(zero for _ in E) for _ in E)
        if callable(src):
            return tuple(tuple(conv(src(a, b)) for b in E) for a in E)
        return tuple(tuple(conv(src[a][b]) for b in E) for a in E)

    vec = lambda v: tuple(int(x) for x in v)
    return TopTriple(
        int(order),
        chi,
        chihat,
        t2(c, reduce_mod1, ZERO),
        t2(m, vec, (0,) * n),
        t2(chat, reduce_mod1, ZERO),
        t2(mhat, vec, (0,) * n),
    )


@dataclass(frozen=True, eq=False)
class TripleReport:
    ok: bool
    condition: Optional[str] = None
    where: Optional[tuple] = None
    detail: str = ""
    witness: Optional[Cochain] = None

    def __bool__(self):
        return self.ok


def _first_failure(f: Cochain):
    d = coboundary(f)
    G = f.group
    for i, args in enumerate(itertools.product(G.elements, repeat=3)):
        if d.const[i] != 0 or any(d.chars[i]):
            return args
    return None


def validate_triple(T: TopTriple) -> TripleReport:
    """Check both cocycle conditions and solve the class equation.

    On success the report carries a bi-module 1-cochain W with
    dW = ([psi] (-) [psihat]) - L.sqcup(chi, chihat).
    """
    _check_pair(T.chi, T.chihat)
    for name, f in (("psi", T.psi()), ("psihat", T.psihat())):
        if not f.is_normalized():
            return TripleReport(False, name, None, "cochain is not normalized")
        where = _first_failure(f)
        if where is not None:
            return TripleReport(False, name, where, "cocycle condition fails")
    target = T.difference() - sqcup(T.chi, T.chihat).cochain().scale(T.order)
    W = solve_coboundary(target)
    if W is None:
        return TripleReport(False, "class-equation", None, "difference is not L times the sqcup class")
    return TripleReport(True, witness=W)


def is_strict(T: TopTriple) -> bool:
    L = T.order
    eta = bockstein(T.chi)
    etahat = bockstein(T.chihat)
    gamma = gamma_table(T.chi, T.chihat)
    for a, b in itertools.product(T.group.elements, repeat=2):
        if tuple(T.m[a][b]) != vscale(-L, etahat[a][b]):
            return False
        if tuple(T.mhat[a][b]) != vscale(-L, eta[a][b]):
            return False
        if reduce_mod1(T.c[a][b] - T.chat[a][b] - L * gamma[a][b]) != 0:
            return False
    return True


def _require_strict(T: TopTriple) -> None:
    if not is_strict(T):
        raise TripleError("input triple is not in strict form; strictify it first")


def exists_triple(chi: TorusHom, chihat: TorusHom, L: int) -> Optional[TopTriple]:
    """A strict triple of order L over (chi, chihat), or None if L.cup3 is nontrivial."""
    _check_pair(chi, chihat)
    L = int(L)
    verdict = solve_coboundary(cup3(chi, chihat).scale(L)) is not None
    c = solve_coboundary(cup3_alt(chi, chihat).scale(L))
    if verdict != (c is not None):
        raise InvariantBreach("the two cup routes disagree on the existence verdict")
    if c is None:
        return None
    E = chi.group.elements
    N = chi.group.size
    eta = bockstein(chi)
    etahat = bockstein(chihat)
    gamma = gamma_table(chi, chihat)
    ctab = tuple(tuple(c.const[a * N + b] for b in E) for a in E)
    T = make_triple(
        L,
        chi,
        chihat,
        ctab,
        lambda a, b: vscale(-L, etahat[a][b]),
        lambda a, b: ctab[a][b] - L * gamma[a][b],
        lambda a, b: vscale(-L, eta[a][b]),
    )
    # the psi constants were solved for; psihat is valid by the cup identity
    if not is_cocycle(T.psi()) or not is_cocycle(T.psihat()):
        raise InvariantBreach("constructed witness is not a pair of cocycles")
    return T


def _trivial_cocycle(G: FiniteGroup, s) -> Cochain:
    if isinstance(s, Cochain):
        f = Cochain(trivial_module(G), 2, s.const, ((),) * len(s.const))
    elif callable(s):
        f = Cochain.from_function(trivial_module(G), 2, s)
    else:
        f = Cochain.from_function(trivial_module(G), 2, lambda a, b: s[a][b])
    if not f.is_normalized() or not is_cocycle(f):
        raise ValueError("torsor element must be a normalized 2-cocycle")
    return f


def torsor_action(T: TopTriple, s) -> TopTriple:
    """Shift the constant parts of psi and psihat by the same 2-cocycle s."""
    f = _trivial_cocycle(T.group, s)
    N = T.group.size
    E = T.group.elements
    c = tuple(tuple(reduce_mod1(T.c[a][b] + f.const[a * N + b]) for b in E) for a in E)
    chat = tuple(tuple(reduce_mod1(T.chat[a][b] + f.const[a * N + b]) for b in E) for a in E)
    return replace(T, c=c, chat=chat)


def _same_parameters(T1: TopTriple, T2: TopTriple) -> None:
    if T1.order != T2.order or T1.chi != T2.chi or T1.chihat != T2.chihat:
        raise ValueError("triples have different (L, chi, chihat)")


def triple_difference(T1: TopTriple, T2: TopTriple) -> Cochain:
    """A 2-cocycle s with torsor_action(T2, s) equivalent to T1."""
    _same_parameters(T1, T2)
    S1, S2 = strictify(T1), strictify(T2)
    f = Cochain.from_function(
        trivial_module(S1.group), 2, lambda a, b: S1.c[a][b] - S2.c[a][b]
    )
    if not is_cocycle(f):
        raise InvariantBreach("difference of strict triples is not a cocycle")
    return f


def strictify(T: TopTriple) -> TopTriple:
    """Equivalent triple with m = -L etahat, mhat = -L eta, c - chat = L gamma."""
    report = validate_triple(T)
    if not report:
        raise TripleError(f"invalid triple: {report.condition}: {report.detail}")
    W = report.witness
    n = T.rank
    G = T.group
    k = tuple(W.const)
    t = tuple(v[:n] for v in W.chars)
    that = tuple(v[n:] for v in W.chars)
    Mchi = character_module(T.chi)
    Mhat = character_module(T.chihat)
    shift = coboundary(Cochain(Mchi, 1, k, t))
    shifthat = coboundary(Cochain(Mhat, 1, (ZERO,) * G.size, that))
    c, m = tables_from_cochain(T.psi() - shift)
    chat, mhat = tables_from_cochain(T.psihat() + shifthat)
    out = TopTriple(T.order, T.chi, T.chihat, c, m, chat, mhat)
    if not is_strict(out):
        raise InvariantBreach("strictification did not reach strict form")
    return out


def triples_equivalent(T1: TopTriple, T2: TopTriple) -> bool:
    """Same (L, chi, chihat) and cohomologous psi and psihat parts."""
    if T1.order != T2.order or T1.chi != T2.chi or T1.chihat != T2.chihat:
        return False
    return (
        solve_coboundary(T1.psi() - T2.psi()) is not None
        and solve_coboundary(T1.psihat() - T2.psihat()) is not None
    )


def order_change(K: int, L: int, T: TopTriple, chi: TorusHom, chihat: TorusHom) -> TopTriple:
    """From order M over (K chi, L chihat) to order K L M over (chi, chihat)."""
    _check_pair(chi, chihat)
    if T.chi != chi.scaled(K) or T.chihat != chihat.scaled(L):
        raise ValueError("triple homomorphisms are not (K chi, L chihat)")
    E = T.group.elements
    return TopTriple(
        K * L * T.order,
        chi,
        chihat,
        T.c,
        tuple(tuple(vscale(K, T.m[a][b]) for b in E) for a in E),
        T.chat,
        tuple(tuple(vscale(L, T.mhat[a][b]) for b in E) for a in E),
    )


def lhat_star(T: TopTriple) -> TopTriple:
    """Strict order-L triple over (chi, chihat) to order 1 over (chi, L chihat)."""
    _require_strict(T)
    L = T.order
    gamma = gamma_table(T.chi, T.chihat)
    eta = bockstein(T.chi)
    E = T.group.elements
    return TopTriple(
        1,
        T.chi,
        T.chihat.scaled(L),
        T.c,
        T.m,
        tuple(tuple(reduce_mod1(T.c[a][b] - L * gamma[a][b]) for b in E) for a in E),
        tuple(tuple(vneg(eta[a][b]) for b in E) for a in E),
    )


def l_star(T: TopTriple) -> TopTriple:
    """Mirror of lhat_star: order 1 over (L chi, chihat), psihat kept."""
    _require_strict(T)
    L = T.order
    gamma = gamma_table(T.chi, T.chihat)
    etahat = bockstein(T.chihat)
    E = T.group.elements
    return TopTriple(
        1,
        T.chi.scaled(L),
        T.chihat,
        tuple(tuple(reduce_mod1(T.chat[a][b] + L * gamma[a][b]) for b in E) for a in E),
        tuple(tuple(vneg(etahat[a][b]) for b in E) for a in E),
        T.chat,
        T.mhat,
    )


def triple_to_dyn(T: TopTriple) -> DynCocycle:
    """w(a) = -L s(chihat(a)) with psi kept."""
    _require_strict(T)
    L = T.order
    w = tuple(vscale(-L, T.chihat.lift(a)) for a in T.group.elements)
    return DynCocycle(T.chi, T.c, T.m, w, T.chi.side)


def triple_to_dual_dyn(T: TopTriple) -> DynCocycle:
    """Mirror: the dual-side cocycle (chihat, chat, mhat, -L s(chi(a)))."""
    _require_strict(T)
    L = T.order
    w = tuple(vscale(-L, T.chi.lift(a)) for a in T.group.elements)
    return DynCocycle(T.chihat, T.chat, T.mhat, w, T.chihat.side)


def dyn_to_triple(d: DynCocycle) -> TopTriple:
    require_valid(d)
    dd = dualize(d)
    return TopTriple(1, d.hom, dual_hom(d), d.c, d.m, dd.c, dd.m)


def poincare_pullback(K: int, L: int, M: int) -> int:
    return K * L * M


def cup_class_order(chi: TorusHom, chihat: TorusHom) -> int:
    """Smallest L >= 1 with L.cup3 a coboundary (the order of the cup class)."""
    z = cup3(chi, chihat)
    bound = chi.group.size
    for L in range(1, bound + 1):
        if solve_coboundary(z.scale(L)) is not None:
            return L
    raise InvariantBreach("cup class order exceeds the group order")
