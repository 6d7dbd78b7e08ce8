import itertools
from fractions import Fraction

import pytest

from tduality.cohomology import Cochain, is_cocycle, UnipotentModule
from tduality.groups import (
    HomomorphismError,
    MissingIdentityError,
    MissingInverseError,
    NonAssociativeError,
    IndexRangeError,
    bockstein,
    enumerate_homs,
    product_cyclic,
    symmetric_group,
    validate_group,
    validate_hom,
)


def test_z2_table_is_valid():
    G = validate_group(2, [[0, 1], [1, 0]])
    assert G.inv == (0, 1)


def test_missing_inverse():
    with pytest.raises(MissingInverseError):
        validate_group(2, [[0, 1], [1, 1]])


def test_missing_identity():
    with pytest.raises(MissingIdentityError):
        validate_group(2, [[1, 0], [0, 1]])


def test_non_associative():
    # a loop of order 5 with identity and inverses but no associativity
    mul = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NonAssociativeError):
        validate_group(5, mul)


def test_out_of_range():
    with pytest.raises(IndexRangeError):
        validate_group(2, [[0, 1], [1, 2]])
    with pytest.raises(IndexRangeError):
        validate_group(2, [[0, 1]])


def test_s3_is_valid_and_nonabelian():
    G = symmetric_group(3)
    assert G.size == 6
    assert not G.is_abelian()
    assert sorted(G.order_of(a) for a in G.elements) == [1, 2, 2, 2, 3, 3]


def test_product_cyclic_shapes():
    assert product_cyclic([2]).size == 2
    V = product_cyclic([2, 2])
    assert all(V.order_of(a) == 2 for a in V.nonidentity)
    G = product_cyclic([2, 4])
    assert G.size == 8
    assert {G.order_of(a) for a in G.elements} == {1, 2, 4}
    assert G.is_abelian()
    assert G.exponent() == 4


def test_product_cyclic_rejects_empty():
    with pytest.raises(ValueError):
        product_cyclic([])


def test_product_cyclic_is_a_group():
    G = product_cyclic([2, 3])
    validate_group(G.size, G.mul)


def test_hom_examples():
    G = product_cyclic([2])
    chi = validate_hom(G, 1, {1: ["1/2"]})
    assert chi(1) == (Fraction(1, 2),)
    with pytest.raises(HomomorphismError):
        validate_hom(product_cyclic([3]), 1, {1: ["1/2"], 2: ["0"]})
    with pytest.raises(HomomorphismError):
        validate_hom(product_cyclic([3]), 1, generators=[["1/2"]])


def test_hom_errors_are_specific():
    G = product_cyclic([2])
    with pytest.raises(HomomorphismError, match="identity"):
        validate_hom(G, 1, {0: ["1/2"], 1: ["1/2"]})
    with pytest.raises(HomomorphismError) as info:
        validate_hom(product_cyclic([3]), 1, {1: ["1/3"], 2: ["1/3"]})
    assert info.value.pair is not None
    with pytest.raises(ValueError):
        validate_hom(G, 2, {1: ["1/2"]})


def test_s3_sign_character():
    G = symmetric_group(3)
    images = {a: [Fraction(1, 2) if G.order_of(a) == 2 else Fraction(0)] for a in G.elements}
    chi = validate_hom(G, 1, images)
    assert chi.rank == 1
    assert any(x.is_trivial() is False for x in enumerate_homs(G, 1))
    assert len(enumerate_homs(G, 1)) == 2


def test_enumerate_homs_counts():
    assert len(enumerate_homs(product_cyclic([4]), 1)) == 4
    assert len(enumerate_homs(product_cyclic([2, 2]), 2)) == 16
    assert len(enumerate_homs(product_cyclic([2, 3]), 1)) == 6


def test_bockstein_examples():
    G = product_cyclic([2])
    eta = bockstein(validate_hom(G, 1, {1: ["1/2"]}))
    assert eta[1][1] == (1,)
    G4 = product_cyclic([4])
    eta4 = bockstein(validate_hom(G4, 1, generators=[["1/4"]]))
    assert eta4[3][3] == (1,)
    assert all(v == (0,) for row in bockstein(enumerate_homs(G4, 1)[0]) for v in row)


@pytest.mark.parametrize("orders", [[2], [4], [2, 2], [3]])
def test_bockstein_is_a_normalized_cocycle(orders):
    G = product_cyclic(orders)
    for n in (1, 2):
        for chi in enumerate_homs(G, n):
            eta = bockstein(chi)
            module = UnipotentModule(G, n, ((Fraction(0),) * n,) * G.size)
            f = Cochain(module, 2, (Fraction(0),) * G.size**2, tuple(eta[a][b] for a in G.elements for b in G.elements))
            assert is_cocycle(f)
            assert all(eta[0][a] == (0,) * n and eta[a][0] == (0,) * n for a in G.elements)


def test_bockstein_is_a_normalized_cocycle_s3():
    G = symmetric_group(3)
    for chi in enumerate_homs(G, 1):
        eta = bockstein(chi)
        for a, b, c in itertools.product(G.elements, repeat=3):
            lhs = eta[b][c][0] - eta[G.mul[b][a]][c][0] + eta[a][G.mul[c][b]][0] - eta[a][b][0]
            assert lhs == 0


def test_bockstein_of_killed_multiple():
    G = product_cyclic([4])
    for chi in enumerate_homs(G, 1):
        assert all(v == (0,) for row in bockstein(chi.scaled(4)) for v in row)
