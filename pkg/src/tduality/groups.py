"""Finite groups as multiplication tables and homomorphisms into tori.

Elements are the integers ``0 .. size-1`` with the identity at index 0.
``mul[a][b]`` is the product ``a*b``.  Throughout the package the product
written ``ba`` in a cocycle formula is ``mul[b][a]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .arith import QmodZVec, ZVec, section_lift, tadd, torus_point, tscale, to_zvec


class GroupValidationError(ValueError):
    pass


class IndexRangeError(GroupValidationError):
    pass


class MissingIdentityError(GroupValidationError):
    pass


class MissingInverseError(GroupValidationError):
    pass


class NonAssociativeError(GroupValidationError):
    pass


class HomomorphismError(ValueError):
    """Raised when images do not define a homomorphism; ``pair`` names the witness."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    size: int
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    orders: Optional[Tuple[int, ...]] = None  # set for product_cyclic groups
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    identity = 0

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def nonidentity(self) -> range:
        return range(1, self.size)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        out = 0
        for _ in range(k):
            out = self.mul[out][a]
        return out

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        out = 1
        for a in self.elements:
            out = lcm(out, self.order_of(a))
        return out

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements for b in self.elements)

    def generators(self) -> List[int]:
        """A small generating set, chosen greedily by increasing index."""
        if self.orders is not None:
            return [cyclic_generator(self.orders, i) for i in range(len(self.orders)) if self.orders[i] > 1]
        gens: List[int] = []
        span = {0}
        for a in self.elements:
            if a not in span:
                gens.append(a)
                span = _closure(self, gens)
            if len(span) == self.size:
                break
        return gens

    def to_document(self) -> dict:
        if self.orders is not None:
            return {"kind": "product_cyclic", "orders": list(self.orders)}
        return {"kind": "table", "size": self.size, "mul": [list(r) for r in self.mul]}


def _closure(G: FiniteGroup, gens: Sequence[int]) -> set:
    span = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul[x][g]
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def validate_group(size: int, mul: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    if size < 1:
        raise GroupValidationError("group size must be positive")
    if len(mul) != size or any(len(row) != size for row in mul):
        raise IndexRangeError(f"multiplication table must be {size}x{size}")
    table = tuple(tuple(int(x) for x in row) for row in mul)
    for a, row in enumerate(table):
        for b, x in enumerate(row):
            if not 0 <= x < size:
                raise IndexRangeError(f"mul({a},{b}) = {x} is out of range")
    for a in range(size):
        if table[0][a] != a or table[a][0] != a:
            raise MissingIdentityError(f"element 0 is not a two-sided identity (fails at {a})")
    inv = []
    for a in range(size):
        candidates = [b for b in range(size) if table[a][b] == 0 and table[b][a] == 0]
        if not candidates:
            raise MissingInverseError(f"element {a} has no two-sided inverse")
        inv.append(candidates[0])
    for a in range(size):
        ra = table[a]
        for b in range(size):
            ab = ra[b]
            rb = table[b]
            for c in range(size):
                if table[ab][c] != ra[rb[c]]:
                    raise NonAssociativeError(f"({a}*{b})*{c} != {a}*({b}*{c})")
    return FiniteGroup(size=size, mul=table, inv=tuple(inv), name=name)


def cyclic_coordinates(orders: Sequence[int], index: int) -> Tuple[int, ...]:
    coords = []
    for n in reversed(orders):
        coords.append(index % n)
        index //= n
    return tuple(reversed(coords))


def cyclic_index(orders: Sequence[int], coords: Sequence[int]) -> int:
    index = 0
    for n, e in zip(orders, coords):
        index = index * n + (e % n)
    return index


def cyclic_generator(orders: Sequence[int], i: int) -> int:
    coords = [0] * len(orders)
    coords[i] = 1
    return cyclic_index(orders, coords)


def product_cyclic(orders: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups, elements indexed lexicographically."""
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise GroupValidationError("product_cyclic needs at least one factor")
    if any(n < 1 for n in orders):
        raise GroupValidationError("cyclic orders must be >= 1")
    size = 1
    for n in orders:
        size *= n
    coords = [cyclic_coordinates(orders, i) for i in range(size)]
    mul = tuple(
        tuple(cyclic_index(orders, [x + y for x, y in zip(coords[a], coords[b])]) for b in range(size))
        for a in range(size)
    )
    inv = tuple(cyclic_index(orders, [-x for x in coords[a]]) for a in range(size))
    name = " x ".join(f"Z/{n}" for n in orders)
    return FiniteGroup(size=size, mul=mul, inv=inv, orders=orders, name=name)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n as a table; permutations in lexicographic order, (p*q)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return validate_group(len(perms), mul, name=f"S{n}")


@dataclass(frozen=True, eq=False)
class TorusHom:
    group: FiniteGroup
    rank: int
    images: Tuple[QmodZVec, ...]
    side: str = "torus"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, a: int) -> QmodZVec:
        return self.images[a]

    def __eq__(self, other):
        return (
            isinstance(other, TorusHom)
            and self.group == other.group
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rank, self.images))

    def lift(self, a: int):
        lifts = self._cache.get("lifts")
        if lifts is None:
            # images are already reduced, so the lift is the image itself
            lifts = self._cache["lifts"] = tuple(section_lift(x) for x in self.images)
        return lifts[a]

    def scaled(self, k: int) -> "TorusHom":
        return TorusHom(self.group, self.rank, tuple(tscale(k, x) for x in self.images), self.side)

    def plus(self, other: "TorusHom") -> "TorusHom":
        if other.group != self.group or other.rank != self.rank:
            raise ValueError("cannot add homomorphisms on different groups or ranks")
        return TorusHom(self.group, self.rank, tuple(tadd(x, y) for x, y in zip(self.images, other.images)), self.side)

    def with_side(self, side: str) -> "TorusHom":
        return TorusHom(self.group, self.rank, self.images, side)

    def is_trivial(self) -> bool:
        return all(all(x == 0 for x in img) for img in self.images)


def flip_side(side: str) -> str:
    return "dual-torus" if side == "torus" else "torus"


def validate_hom(
    G: FiniteGroup,
    rank: int,
    images: Optional[Mapping[int, Sequence] | Sequence[Sequence]] = None,
    *,
    generators: Optional[Sequence[Sequence]] = None,
    side: str = "torus",
) -> TorusHom:
    """Build a TorusHom from per-element images or (product_cyclic only) generator images.

    Per-element images may be a full list or a mapping; absent elements map
    to zero.  The homomorphism property is checked on every pair.
    """
    if side not in ("torus", "dual-torus"):
        raise ValueError(f"unknown side {side!r}")
    if (images is None) == (generators is None):
        raise ValueError("give exactly one of images or generators")
    zero = (Fraction(0),) * rank
    if generators is not None:
        if G.orders is None:
            raise ValueError("generator shorthand needs a product_cyclic group")
        if len(generators) != len(G.orders):
            raise ValueError(f"expected {len(G.orders)} generator images, got {len(generators)}")
        gens = [torus_point(g) for g in generators]
        if any(len(g) != rank for g in gens):
            raise ValueError("generator image has the wrong rank")
        table = []
        for a in G.elements:
            coords = cyclic_coordinates(G.orders, a)
            img = zero
            for e, g in zip(coords, gens):
                img = tadd(img, tscale(e, g))
            table.append(img)
    else:
        if isinstance(images, Mapping):
            table = [zero] * G.size
            for key, val in images.items():
                a = int(key)
                if not 0 <= a < G.size:
                    raise ValueError(f"element index {a} out of range")
                table[a] = torus_point(val)
        else:
            if len(images) != G.size:
                raise ValueError(f"expected {G.size} images, got {len(images)}")
            table = [torus_point(v) for v in images]
        if any(len(v) != rank for v in table):
            raise ValueError("image has the wrong rank")
    if any(x != 0 for x in table[0]):
        raise HomomorphismError("identity must map to zero", (0, 0))
    for a in G.elements:
        for b in G.elements:
            if table[G.mul[a][b]] != tadd(table[a], table[b]):
                raise HomomorphismError(f"additivity fails at pair ({a},{b})", (a, b))
    return TorusHom(G, rank, tuple(table), side)


def trivial_hom(G: FiniteGroup, rank: int, side: str = "torus") -> TorusHom:
    return TorusHom(G, rank, ((Fraction(0),) * rank,) * G.size, side)


def bockstein(chi: TorusHom) -> Tuple[Tuple[ZVec, ...], ...]:
    """eta(a,b) = s(chi(b)) - s(chi(ba)) + s(chi(a)), s the fundamental-domain lift."""
    cached = chi._cache.get("bockstein")
    if cached is not None:
        return cached
    G = chi.group
    lifts = [chi.lift(a) for a in G.elements]
    eta = tuple(
        tuple(
            to_zvec([x - y + z for x, y, z in zip(lifts[b], lifts[G.mul[b][a]], lifts[a])])
            for b in G.elements
        )
        for a in G.elements
    )
    chi._cache["bockstein"] = eta
    return eta


def enumerate_homs(G: FiniteGroup, rank: int, side: str = "torus") -> List[TorusHom]:
    """Every homomorphism Gamma -> (Q/Z)^rank.

    Images of generators are searched among the points of order dividing the
    generator's order; used to build test grids, not exposed on the CLI.
    """
    gens = G.generators()
    per_coord = []
    for g in gens:
        k = G.order_of(g)
        per_coord.append([Fraction(j, k) for j in range(k)])
    out = []
    choices = [list(itertools.product(vals, repeat=rank)) for vals in per_coord]
    for assignment in itertools.product(*choices):
        table = _extend_from_generators(G, gens, assignment, rank)
        if table is None:
            continue
        out.append(TorusHom(G, rank, tuple(table), side))
    return out


def _extend_from_generators(G, gens, assignment, rank):
    zero = (Fraction(0),) * rank
    table: Dict[int, tuple] = {0: zero}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, img in zip(gens, assignment):
            y = G.mul[x][g]
            val = tadd(table[x], img)
            if y in table:
                if table[y] != val:
                    return None
            else:
                table[y] = val
                frontier.append(y)
    full = [table[a] for a in G.elements]
    for a in G.elements:
        for b in G.elements:
            if full[G.mul[a][b]] != tadd(full[a], full[b]):
                return None
    return full


def group_from_document(doc: Mapping) -> FiniteGroup:
    kind = doc.get("kind")
    if kind == "product_cyclic":
        return product_cyclic(doc["orders"])
    if kind == "table":
        return validate_group(int(doc["size"]), doc["mul"])
    raise GroupValidationError(f"unknown group kind {kind!r}")


def hom_from_document(G: FiniteGroup, doc: Mapping, side: str = "torus") -> TorusHom:
    rank = int(doc["rank"])
    side = doc.get("side", side)
    if "generators" in doc:
        return validate_hom(G, rank, generators=doc["generators"], side=side)
    return validate_hom(G, rank, doc.get("images", {}), side=side)


def iter_tuples(G: FiniteGroup, k: int, normalized: bool = False) -> Iterable[Tuple[int, ...]]:
    elems = G.nonidentity if normalized else G.elements
    return itertools.product(elems, repeat=k)
