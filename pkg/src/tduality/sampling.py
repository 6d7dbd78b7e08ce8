"""Random valid cocycles and triples for property sweeps."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .arith import vadd, vneg
from .cohomology import Cochain, character_module, coboundary, random_cocycle, solve_coboundary, trivial_module
from .duality import DynCocycle, apply_coboundary, make_dyn, psi_cochain, tables_from_cochain
from .groups import FiniteGroup, TorusHom, enumerate_homs
from .triples import TopTriple, exists_triple, torsor_action


def hom_list(G: FiniteGroup, rank: int, side: str = "torus") -> List[TorusHom]:
    key = ("homs", rank, side)
    if key not in G._cache:
        G._cache[key] = enumerate_homs(G, rank, side)
    return G._cache[key]


def random_normalized_k(G: FiniteGroup, rng: random.Random, denominators=(2, 3, 4, 6)) -> list:
    out = [Fraction(0)]
    for _ in G.nonidentity:
        q = rng.choice(denominators)
        out.append(Fraction(rng.randrange(q), q))
    return out


def random_normalized_t(G: FiniteGroup, rank: int, rng: random.Random, bound: int = 2) -> list:
    return [(0,) * rank] + [tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in G.nonidentity]


def random_dyn(
    G: FiniteGroup,
    rank: int,
    rng: random.Random,
    chi: Optional[TorusHom] = None,
    chihat: Optional[TorusHom] = None,
    attempts: int = 50,
) -> Optional[DynCocycle]:
    """A random valid DynCocycle, or None if no hom pair drawn admits one.

    The frequency is w = -s(chihat) + t for a random integer t, m is forced
    by it, the constants are solved for, then shifted by a random cocycle
    and a random coboundary.
    """
    homs = hom_list(G, rank)
    for _ in range(attempts):
        x = chi if chi is not None else rng.choice(homs)
        y = chihat if chihat is not None else rng.choice(homs)
        t = random_normalized_t(G, rank, rng)
        w = [vadd(vneg(y.lift(a)), t[a]) for a in G.elements]
        mul = G.mul
        m = [[tuple(int(p - q + r) for p, q, r in zip(w[b], w[mul[b][a]], w[a])) for b in G.elements] for a in G.elements]
        rhs = Cochain.from_function(
            trivial_module(G),
            3,
            lambda a, b, c: -sum((p * q for p, q in zip(m[b][c], x(a))), Fraction(0)),
        )
        sol = solve_coboundary(rhs)
        if sol is None:
            if chi is not None and chihat is not None:
                return None
            continue
        s = random_cocycle(G, 2, rng)
        N = G.size
        c = [[sol.const[a * N + b] + s.const[a * N + b] for b in G.elements] for a in G.elements]
        d = make_dyn(x, c, m, w)
        return apply_coboundary(d, random_normalized_k(G, rng), random_normalized_t(G, rank, rng))
    return None


def perturb_psi(hom: TorusHom, c, m, rng: random.Random):
    """Add a random M_chi coboundary to (c, m)."""
    G = hom.group
    k = random_normalized_k(G, rng)
    t = random_normalized_t(G, hom.rank, rng)
    d = coboundary(Cochain(character_module(hom), 1, tuple(k), tuple(t)))
    return tables_from_cochain(psi_cochain(hom, c, m) + d)


def random_strict_triple(
    G: FiniteGroup, rank: int, L: int, rng: random.Random, attempts: int = 50, chi=None, chihat=None
) -> Optional[TopTriple]:
    homs = hom_list(G, rank)
    for _ in range(attempts):
        x = chi if chi is not None else rng.choice(homs)
        y = (chihat if chihat is not None else rng.choice(homs)).with_side("dual-torus")
        T = exists_triple(x, y, L)
        if T is None:
            if chi is not None and chihat is not None:
                return None
            continue
        return torsor_action(T, random_cocycle(G, 2, rng))
    return None


def scramble_triple(T: TopTriple, rng: random.Random) -> TopTriple:
    """Same classes, non-strict representatives."""
    c, m = perturb_psi(T.chi, T.c, T.m, rng)
    chat, mhat = perturb_psi(T.chihat, T.chat, T.mhat, rng)
    return TopTriple(T.order, T.chi, T.chihat, c, m, chat, mhat)
