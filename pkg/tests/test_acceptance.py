"""Acceptance criteria, one test each, with the stated sample sizes and time limits.

A pass/fail line per criterion is printed in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from oracles import as_key, coboundaries_degree2, h2_torsion_count, solve_degree2
from tduality.arith import pair, reduce_mod1
from tduality.cohomology import Cochain, coboundary, schur_multiplier, solve_coboundary, trivial_module
from tduality.duality import dual_hom, dualize, is_cohomologous_dyn, validate_dyn
from tduality.groups import bockstein, product_cyclic, symmetric_group, validate_hom
from tduality.sampling import hom_list, random_dyn, random_strict_triple, scramble_triple
from tduality.triples import (
    cup3,
    cup3_alt,
    delta_beta,
    dyn_to_triple,
    exists_triple,
    gamma_table,
    lhat_star,
    make_triple,
    order_change,
    strictify,
    triple_to_dyn,
    triples_equivalent,
    validate_triple,
)


def sweep_groups():
    return [product_cyclic([2]), product_cyclic([3]), product_cyclic([4]), product_cyclic([2, 2]), symmetric_group(3)]


@pytest.mark.acceptance(1, "duality involution on 200 random cocycles")
def test_duality_involution():
    start = time.perf_counter()
    rng = random.Random(101)
    checked = 0
    for G in sweep_groups():
        for n in (1, 2):
            for _ in range(20):
                d = random_dyn(G, n, rng)
                assert d is not None and validate_dyn(d)
                once = dualize(d)
                assert dual_hom(once) == d.hom
                assert is_cohomologous_dyn(dualize(once), d) is not None
                checked += 1
    assert checked >= 200
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(2, "both cup routes cohomologous on a grid of hom pairs")
def test_cup_routes():
    start = time.perf_counter()
    pairs = []
    for G in sweep_groups():
        homs = hom_list(G, 1)
        pairs += [(x, y) for x in homs for y in homs]
    homs2 = hom_list(product_cyclic([2]), 2)
    pairs += [(x, y) for x in homs2 for y in homs2]
    assert len(pairs) >= 50
    for x, y in pairs:
        assert solve_coboundary(cup3(x, y) - cup3_alt(x, y)) is not None
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(3, "pointwise coboundary identity for beta, 1000 points per pair")
def test_beta_identity():
    start = time.perf_counter()
    rng = random.Random(303)
    G4 = product_cyclic([4])
    V4 = product_cyclic([2, 2])
    cases = [
        (validate_hom(G4, 1, generators=[["1/4"]]), validate_hom(G4, 1, generators=[["1/2"]])),
        (validate_hom(G4, 1, generators=[["3/4"]]), validate_hom(G4, 1, generators=[["1/4"]])),
        (validate_hom(V4, 2, generators=[["1/2", "0"], ["1/2", "1/2"]]), validate_hom(V4, 2, generators=[["0", "1/2"], ["1/2", "0"]])),
    ]
    for x, y in cases:
        eta, etahat, gamma = bockstein(x), bockstein(y), gamma_table(x, y)
        n = x.rank
        for _ in range(1000):
            a, b = rng.randrange(x.group.size), rng.randrange(x.group.size)
            z = [Fraction(rng.randrange(1, 97), rng.randrange(1, 97)) for _ in range(n)]
            zh = [Fraction(rng.randrange(1, 97), rng.randrange(1, 97)) for _ in range(n)]
            want = reduce_mod1(gamma[a][b] - pair(etahat[a][b], z) + pair(eta[a][b], zh))
            assert delta_beta(x, y, a, b, z, zh) == want
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance(4, "Z/2 existence: none for odd L, witness for even L")
def test_existence_z2():
    start = time.perf_counter()
    G = product_cyclic([2])
    chi = validate_hom(G, 1, {1: ["1/2"]})
    chihat = validate_hom(G, 1, {1: ["1/2"]}, side="dual-torus")
    for L in range(1, 10, 2):
        assert exists_triple(chi, chihat, L) is None
    for L in range(2, 11, 2):
        T = exists_triple(chi, chihat, L)
        assert T is not None and validate_triple(T)
    assert time.perf_counter() - start < 5


@pytest.mark.acceptance(5, "Schur multipliers, cross-checked by enumeration")
def test_schur_multipliers():
    start = time.perf_counter()
    for m in range(1, 9):
        assert schur_multiplier(product_cyclic([m])).invariant_factors == ()
    assert schur_multiplier(product_cyclic([2, 2])).invariant_factors == (2,)
    assert schur_multiplier(product_cyclic([3, 3])).invariant_factors == (3,)
    assert schur_multiplier(symmetric_group(3)).invariant_factors == ()
    for G in [product_cyclic([2]), product_cyclic([3]), product_cyclic([4]), product_cyclic([2, 2])]:
        H = schur_multiplier(G)
        for q in range(1, 7):
            assert h2_torsion_count(G.mul, q) == H.torsion_count(q), (G.name, q)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(6, "torsor over the Klein four group has 2 classes")
def test_torsor_count():
    start = time.perf_counter()
    G = product_cyclic([2, 2])
    chi = validate_hom(G, 1, generators=[["1/2"], ["0"]])
    chihat = validate_hom(G, 1, generators=[["0"], ["1/2"]], side="dual-torus")
    L = next(L for L in range(1, 5) if exists_triple(chi, chihat, L) is not None)
    alt = cup3_alt(chi, chihat).scale(L)
    gamma = gamma_table(chi, chihat)
    eta, etahat = bockstein(chi), bockstein(chihat)
    rhs = {(a, b, c): alt.c(a, b, c) for a in G.nonidentity for b in G.nonidentity for c in G.nonidentity}
    solutions = solve_degree2(G.mul, 4, rhs)
    assert solutions
    reps = []
    for sol in solutions:
        ctab = [[sol.get((a, b), Fraction(0)) for b in G.elements] for a in G.elements]
        T = make_triple(
            L,
            chi,
            chihat,
            ctab,
            lambda a, b: tuple(-L * x for x in etahat[a][b]),
            lambda a, b: ctab[a][b] - L * gamma[a][b],
            lambda a, b: tuple(-L * x for x in eta[a][b]),
        )
        assert validate_triple(T)
        if not any(triples_equivalent(T, R) for R in reps):
            reps.append(T)
    assert len(reps) == schur_multiplier(G).order == 2
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(7, "round trips between dynamical and topological triples, and order change")
def test_round_trips():
    start = time.perf_counter()
    rng = random.Random(707)
    groups = sweep_groups()
    for i in range(100):
        d = random_dyn(groups[i % len(groups)], 1 + i % 2, rng)
        T = dyn_to_triple(d)
        assert validate_triple(T)
        assert is_cohomologous_dyn(triple_to_dyn(strictify(T)), d) is not None
    done = 0
    while done < 100:
        G = groups[done % len(groups)]
        T = random_strict_triple(G, 1, 1, rng)
        if T is None:
            continue
        back = dyn_to_triple(triple_to_dyn(T))
        assert triples_equivalent(back, T)
        done += 1
    done = 0
    attempts = 0
    while done < 100:
        attempts += 1
        G = groups[attempts % len(groups)]
        L = 1 + attempts % 3
        T = random_strict_triple(G, 1, L, rng)
        if T is None:
            continue
        lowered = lhat_star(T)
        assert validate_triple(lowered)
        assert triples_equivalent(order_change(1, L, lowered, T.chi, T.chihat), T)
        raised = order_change(1, L, lowered, T.chi, T.chihat)
        assert triples_equivalent(lhat_star(strictify(scramble_triple(raised, rng))), lowered)
        done += 1
    assert time.perf_counter() - start < 30


@pytest.mark.acceptance(8, "solver agrees with brute force on degree-2 instances")
def test_solver_brute_force():
    start = time.perf_counter()
    for G in [product_cyclic([2]), product_cyclic([3]), product_cyclic([2, 2])]:
        module = trivial_module(G)
        for q in range(1, 7):
            cob = coboundaries_degree2(G.mul, q)
            for z in solve_degree2(G.mul, q):
                f = Cochain.from_function(module, 2, lambda a, b: z.get((a, b), 0))
                w = solve_coboundary(f)
                assert (w is not None) == (as_key(G.mul, z) in cob), (G.name, q, z)
                if w is not None:
                    assert coboundary(w) == f
    assert time.perf_counter() - start < 60
