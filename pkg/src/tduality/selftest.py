"""Seeded randomized property sweeps, runnable serially or in a process pool.

Each check draws from its own generator seeded by ``"<seed>:<check name>"``,
so the report does not depend on scheduling or on ``jobs``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .arith import pair, reduce_mod1
from .cohomology import schur_multiplier, solve_coboundary
from .duality import dual_hom, dualize, is_cohomologous_dyn, validate_dyn
from .groups import FiniteGroup, bockstein, product_cyclic, symmetric_group
from .sampling import hom_list, random_dyn, random_strict_triple, scramble_triple
from .triples import (
    cup3,
    cup3_alt,
    delta_beta,
    dyn_to_triple,
    exists_triple,
    gamma_table,
    lhat_star,
    order_change,
    strictify,
    triple_to_dyn,
    triples_equivalent,
    validate_triple,
)


def sweep_groups() -> List[FiniteGroup]:
    return [product_cyclic([2]), product_cyclic([3]), product_cyclic([4]), product_cyclic([2, 2]), symmetric_group(3)]


def _involution(rng: random.Random, samples: int) -> Tuple[int, int]:
    cases = fails = 0
    groups = sweep_groups()
    for i in range(samples):
        G = groups[i % len(groups)]
        d = random_dyn(G, 1 + (i // len(groups)) % 2, rng)
        if d is None:
            continue
        cases += 1
        dd = dualize(d)
        if dual_hom(dd) != d.hom or not validate_dyn(dd) or is_cohomologous_dyn(dualize(dd), d) is None:
            fails += 1
    return cases, fails


def _cup_routes(rng: random.Random, samples: int) -> Tuple[int, int]:
    cases = fails = 0
    for G in (product_cyclic([4]), product_cyclic([2, 2]), symmetric_group(3)):
        homs = hom_list(G, 1)
        for x in homs:
            for y in homs:
                cases += 1
                if solve_coboundary(cup3(x, y) - cup3_alt(x, y)) is None:
                    fails += 1
    return cases, fails


def _beta(rng: random.Random, samples: int) -> Tuple[int, int]:
    cases = fails = 0
    G = product_cyclic([4])
    homs = hom_list(G, 1)
    for x in homs:
        for y in homs:
            eta, etahat, gamma = bockstein(x), bockstein(y), gamma_table(x, y)
            for _ in range(samples):
                a, b = rng.randrange(G.size), rng.randrange(G.size)
                z = [Fraction(rng.randrange(60), 60)]
                zh = [Fraction(rng.randrange(60), 60)]
                want = reduce_mod1(gamma[a][b] - pair(etahat[a][b], z) + pair(eta[a][b], zh))
                cases += 1
                if delta_beta(x, y, a, b, z, zh) != want:
                    fails += 1
    return cases, fails


def _existence(rng: random.Random, samples: int) -> Tuple[int, int]:
    G = product_cyclic([2])
    x = hom_list(G, 1)[1]
    cases = fails = 0
    for L in range(1, 11):
        T = exists_triple(x, x.with_side("dual-torus"), L)
        cases += 1
        if (T is None) != (L % 2 == 1) or (T is not None and not validate_triple(T)):
            fails += 1
    return cases, fails


def _schur(rng: random.Random, samples: int) -> Tuple[int, int]:
    expected = [([m], ()) for m in range(1, 9)] + [([2, 2], (2,)), ([3, 3], (3,))]
    cases = fails = 0
    for orders, want in expected:
        cases += 1
        if schur_multiplier(product_cyclic(orders)).invariant_factors != want:
            fails += 1
    cases += 1
    if schur_multiplier(symmetric_group(3)).invariant_factors != ():
        fails += 1
    return cases, fails


def _round_trips(rng: random.Random, samples: int) -> Tuple[int, int]:
    cases = fails = 0
    groups = sweep_groups()
    for i in range(samples):
        G = groups[i % len(groups)]
        d = random_dyn(G, 1, rng)
        if d is None:
            continue
        cases += 1
        T = dyn_to_triple(d)
        if not validate_triple(T) or is_cohomologous_dyn(triple_to_dyn(strictify(T)), d) is None:
            fails += 1
    return cases, fails


def _order_change(rng: random.Random, samples: int) -> Tuple[int, int]:
    cases = fails = 0
    groups = sweep_groups()
    for i in range(samples):
        G = groups[i % len(groups)]
        L = 1 + i % 3
        T = random_strict_triple(G, 1, L, rng)
        if T is None:
            continue
        cases += 1
        back = order_change(1, L, lhat_star(T), T.chi, T.chihat)
        if not triples_equivalent(back, T) or not triples_equivalent(strictify(scramble_triple(T, rng)), T):
            fails += 1
    return cases, fails


CHECKS: Dict[str, Callable[[random.Random, int], Tuple[int, int]]] = {
    "beta-identity": _beta,
    "cup-routes": _cup_routes,
    "duality-involution": _involution,
    "existence-z2": _existence,
    "lhat-order-change": _order_change,
    "round-trips": _round_trips,
    "schur-multipliers": _schur,
}


def _run_one(args) -> dict:
    name, seed, samples = args
    rng = random.Random(f"{seed}:{name}")
    cases, fails = CHECKS[name](rng, samples)
    return {"name": name, "cases": cases, "failures": fails, "passed": fails == 0 and cases > 0}


def run_selftest(seed: int = 0, samples: int = 20, jobs: int = 1) -> dict:
    tasks = [(name, seed, samples) for name in sorted(CHECKS)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    results.sort(key=lambda r: r["name"])
    return {"seed": seed, "samples": samples, "checks": results, "passed": all(r["passed"] for r in results)}
