import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tduality.cohomology import solve_coboundary
from tduality.duality import (
    InvalidCocycle,
    MackeyObstruction,
    apply_coboundary,
    conjugate,
    dual_hom,
    dualize,
    is_cohomologous_dyn,
    mackey_vanishes,
    make_dyn,
    require_valid,
    tensor,
    validate_dyn,
)
from tduality.groups import product_cyclic, symmetric_group, validate_hom
from tduality.sampling import hom_list, random_dyn, random_normalized_k, random_normalized_t
from tduality.triples import cup3

HALF = Fraction(1, 2)
Z2 = product_cyclic([2])
CHI = validate_hom(Z2, 1, {1: ["1/2"]})
GROUPS = [product_cyclic([2]), product_cyclic([4]), product_cyclic([2, 2]), product_cyclic([3]), symmetric_group(3)]


def example():
    return make_dyn(CHI, c=lambda a, b: HALF if a == b == 1 else 0)


def test_zero_cocycle_is_valid():
    for G in GROUPS:
        for chi in hom_list(G, 1):
            assert validate_dyn(make_dyn(chi))


def test_z2_example_is_valid():
    assert validate_dyn(example())


def test_half_frequency_fails():
    # (C) forces m(1,1) = -1, then (B) leaves 1/2 at (1,1,1) whatever c is
    for c11 in (0, Fraction(1, 4), HALF, Fraction(3, 4)):
        d = make_dyn(CHI, c=lambda a, b: c11 if a == b == 1 else 0, m=lambda a, b: (-1,) if a == b == 1 else (0,), w=[(0,), (-HALF,)])
        v = validate_dyn(d)
        assert not v and v.condition == "B" and v.where == (1, 1, 1)
        with pytest.raises(InvalidCocycle):
            require_valid(d)


def test_failure_reports():
    d = make_dyn(CHI, w=[(0,), (-HALF,)])
    v = validate_dyn(d)
    assert not v and v.condition == "C" and v.where == (1, 1)
    bad = make_dyn(CHI, c=lambda a, b: HALF if a == 0 and b == 1 else 0)
    assert validate_dyn(bad).condition == "normalization"
    nonlin = make_dyn(CHI, m=lambda a, b: (1,) if a == b == 1 else (0,), w=[(0,), (HALF,)])
    assert validate_dyn(nonlin).condition in ("B", "C")
    assert validate_dyn(nonlin).to_dict()["valid"] is False


def test_dual_hom_examples():
    assert dual_hom(make_dyn(CHI)).is_trivial()
    d = make_dyn(CHI, m=lambda a, b: (-1,) if a == b == 1 else (0,), w=[(0,), (-1,)])
    assert dual_hom(d).is_trivial()
    assert dual_hom(d).side == "dual-torus"


def test_dualize_zero():
    G = product_cyclic([3])
    trivial = validate_hom(G, 1, generators=[["0"]])
    out = dualize(make_dyn(trivial))
    assert out == make_dyn(trivial, side="dual-torus")


def test_dualize_example():
    out = dualize(example())
    assert out.hom.is_trivial() and out.side == "dual-torus"
    assert out.c[1][1] == HALF
    assert out.m[1][1] == (-1,)
    assert out.w[1] == (-HALF,)
    assert validate_dyn(out)
    assert dual_hom(out) == CHI
    back = dualize(out)
    assert back == example()
    assert back.hom == CHI and back.side == "torus"


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_involution(G):
    rng = random.Random(G.name)
    for n in (1, 2):
        for _ in range(8):
            d = random_dyn(G, n, rng)
            dd = dualize(d)
            assert validate_dyn(dd)
            assert dual_hom(dd) == d.hom
            assert dualize(dd).hom == d.hom
            assert is_cohomologous_dyn(dualize(dd), d) is not None


def test_cohomologous_self_and_coboundary():
    rng = random.Random(11)
    for G in GROUPS:
        d = random_dyn(G, 1, rng)
        assert is_cohomologous_dyn(d, d).is_zero()
        k, t = random_normalized_k(G, rng), random_normalized_t(G, 1, rng)
        e = apply_coboundary(d, k, t)
        wit = is_cohomologous_dyn(d, e)
        assert wit is not None
        assert apply_coboundary(d, wit.k, wit.t) == e


def test_cohomologous_rejects():
    a = make_dyn(CHI)
    b = example()
    assert validate_dyn(b)
    # c(1,1)=1/2 is d of k(1)=1/4 in the trivial module, but with chi=1/2 the
    # forced t=0 leaves the same residual, so both are cohomologous
    assert is_cohomologous_dyn(a, b) is not None
    V = product_cyclic([2, 2])
    coords = [(x // 2, x % 2) for x in V.elements]
    chi = validate_hom(V, 1, generators=[["1/2"], ["0"]])
    klein = make_dyn(chi, c=lambda x, y: Fraction(coords[x][0] * coords[y][1], 2))
    assert validate_dyn(klein)
    assert is_cohomologous_dyn(make_dyn(chi), klein) is None
    # same chi but a different dual homomorphism: the frequencies differ by a
    # non-integral amount, so t cannot be integral
    G4 = product_cyclic([4])
    x = validate_hom(G4, 1, generators=[["1/2"]])
    y = validate_hom(G4, 1, generators=[["1/2"]], side="dual-torus")
    other = random_dyn(G4, 1, random.Random(2), chi=x, chihat=y)
    assert other is not None and dual_hom(other) == y
    assert is_cohomologous_dyn(make_dyn(x), other) is None
    with pytest.raises(ValueError):
        is_cohomologous_dyn(make_dyn(chi), make_dyn(validate_hom(V, 1, generators=[["0"], ["1/2"]])))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(GROUPS) - 1), st.integers(1, 2), st.integers(0, 10**6))
def test_coboundary_stability(gi, n, seed):
    rng = random.Random(seed)
    G = GROUPS[gi]
    d = random_dyn(G, n, rng)
    e = apply_coboundary(d, random_normalized_k(G, rng), random_normalized_t(G, n, rng))
    assert validate_dyn(e)
    assert dual_hom(e) == dual_hom(d).plus(dual_hom(e).plus(dual_hom(d).scaled(-1)))


def test_tensor_and_conjugate():
    rng = random.Random(3)
    for G in GROUPS:
        chi = hom_list(G, 1)[-1]
        d1 = random_dyn(G, 1, rng, chi=chi)
        d2 = random_dyn(G, 1, rng, chi=chi)
        if d1 is None or d2 is None:
            continue
        assert validate_dyn(tensor(d1, d2))
        assert validate_dyn(conjugate(d1))
        assert tensor(d1, make_dyn(chi)) == d1
        assert is_cohomologous_dyn(tensor(d1, conjugate(d1)), make_dyn(chi)) is not None


def test_dual_hom_is_additive():
    rng = random.Random(8)
    for G in GROUPS:
        for chi in hom_list(G, 1):
            d1, d2 = random_dyn(G, 1, rng, chi=chi), random_dyn(G, 1, rng, chi=chi)
            if d1 is None or d2 is None:
                continue
            assert dual_hom(tensor(d1, d2)) == dual_hom(d1).plus(dual_hom(d2))


def test_duality_additive_where_defined():
    # both sides share a homomorphism only for trivial chi and trivial dual homs
    rng = random.Random(12)
    for G in GROUPS:
        zero = hom_list(G, 1)[0]
        zerohat = zero.with_side("dual-torus")
        for _ in range(5):
            d1 = random_dyn(G, 1, rng, chi=zero, chihat=zerohat)
            d2 = random_dyn(G, 1, rng, chi=zero, chihat=zerohat)
            lhs, rhs = dualize(tensor(d1, d2)), tensor(dualize(d1), dualize(d2))
            assert is_cohomologous_dyn(lhs, rhs) is not None


def test_tensor_of_quarters():
    q = make_dyn(CHI, c=lambda a, b: Fraction(1, 4) if a == b == 1 else 0)
    assert validate_dyn(q)
    assert tensor(q, q) == example()


def test_tensor_mismatch():
    with pytest.raises(ValueError):
        tensor(make_dyn(CHI), make_dyn(validate_hom(Z2, 1, {1: ["0"]})))


def test_mackey():
    assert mackey_vanishes(MackeyObstruction(((0, 0), (0, 0))))
    assert not mackey_vanishes(MackeyObstruction(((0, HALF), (HALF, 0))))
    assert mackey_vanishes(MackeyObstruction(((0, Fraction(3)), (Fraction(-3), 0))))
    with pytest.raises(ValueError):
        MackeyObstruction(((0, Fraction(1, 3)), (Fraction(1, 3), 0)))
    with pytest.raises(ValueError):
        MackeyObstruction(((HALF, 0), (0, 0)))


def test_obstruction_coherence():
    rng = random.Random(9)
    for G in GROUPS:
        for _ in range(5):
            d = random_dyn(G, 1, rng)
            assert solve_coboundary(cup3(d.hom, dual_hom(d))) is not None
    chihat = validate_hom(Z2, 1, {1: ["1/2"]}, side="dual-torus")
    assert random_dyn(Z2, 1, rng, chi=CHI, chihat=chihat) is None
