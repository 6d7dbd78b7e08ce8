"""Normalized bar cochains with values in unipotent modules, and their cohomology.

A unipotent module is ``Q/Z (+) Z^s`` with ``a^{-1} . (c, v) = (c - tau(a).v, v)``
for a homomorphism ``tau : Gamma -> (Q/Z)^s``.  A k-cochain is stored as two
total arrays over ``Gamma^k`` in lexicographic order: the circle part and the
lattice part.

The coboundary is

    (df)(a0..ak) = a0^{-1}.f(a1..ak) + sum_{i=1..k} (-1)^i f(.., a_i a_{i-1}, ..)
                   + (-1)^{k+1} f(a0..a_{k-1})

so in degree 2, ``(df)(a,b,c) = a^{-1}.f(b,c) - f(ba,c) + f(a,cb) - f(a,b)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Callable, List, Optional, Sequence, Tuple

from .arith import ZERO, QmodZ, ZVec, pair, reduce_mod1, tneg
from .errors import InvariantBreach
from .groups import FiniteGroup, TorusHom
from .smith import SmithForm, invariant_factors


@dataclass(frozen=True, eq=False)
class UnipotentModule:
    group: FiniteGroup
    s: int
    twist: Tuple[Tuple[Fraction, ...], ...]

    def __eq__(self, other):
        return (
            isinstance(other, UnipotentModule)
            and self.group == other.group
            and self.s == other.s
            and self.twist == other.twist
        )

    def __hash__(self):
        return hash((self.s, self.twist))

    def act_inverse(self, a: int, c: QmodZ, v: ZVec) -> QmodZ:
        """Circle part of ``a^{-1} . (c, v)``; the lattice part is unchanged."""
        if self.s == 0:
            return c
        return reduce_mod1(c - pair(v, self.twist[a]))

    def is_trivial(self) -> bool:
        return self.s == 0


def trivial_module(G: FiniteGroup) -> UnipotentModule:
    return UnipotentModule(G, 0, ((),) * G.size)


def character_module(chi: TorusHom) -> UnipotentModule:
    """The module M_chi: Q/Z (+) Z^n with tau = -chi."""
    return UnipotentModule(chi.group, chi.rank, tuple(tneg(chi(a)) for a in chi.group.elements))


def bimodule(chi: TorusHom, chihat: TorusHom) -> UnipotentModule:
    """M_chi M_chihat: Q/Z (+) Z^n (+) Z^n with tau = (-chi, -chihat)."""
    if chi.group != chihat.group:
        raise ValueError("homomorphisms live on different groups")
    G = chi.group
    return UnipotentModule(G, chi.rank + chihat.rank, tuple(tneg(chi(a) + chihat(a)) for a in G.elements))


def _flat(n: int, args: Sequence[int]) -> int:
    i = 0
    for a in args:
        i = i * n + a
    return i


@dataclass(frozen=True, eq=False)
class Cochain:
    module: UnipotentModule
    degree: int
    const: Tuple[Fraction, ...]
    chars: Tuple[ZVec, ...]

    def __post_init__(self):
        n = self.module.group.size ** self.degree
        if len(self.const) != n or len(self.chars) != n:
            raise ValueError("cochain arrays have the wrong length")
        if any(len(v) != self.module.s for v in self.chars):
            raise ValueError("lattice part has the wrong rank")

    @classmethod
    def zero(cls, module: UnipotentModule, degree: int) -> "Cochain":
        n = module.group.size**degree
        return cls(module, degree, (ZERO,) * n, ((0,) * module.s,) * n)

    @classmethod
    def from_function(cls, module: UnipotentModule, degree: int, f: Callable) -> "Cochain":
        """``f(*args)`` returns a circle value, or a pair (circle, lattice vector)."""
        consts, chars = [], []
        for args in itertools.product(module.group.elements, repeat=degree):
            val = f(*args)
            if module.s == 0 and not isinstance(val, tuple):
                c, v = val, ()
            else:
                c, v = val
            consts.append(reduce_mod1(c))
            chars.append(tuple(int(x) for x in v))
        return cls(module, degree, tuple(consts), tuple(chars))

    @property
    def group(self) -> FiniteGroup:
        return self.module.group

    def index(self, args: Sequence[int]) -> int:
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        return _flat(self.group.size, args)

    def __call__(self, *args: int):
        i = self.index(args)
        if self.module.s == 0:
            return self.const[i]
        return self.const[i], self.chars[i]

    def c(self, *args: int) -> Fraction:
        return self.const[self.index(args)]

    def v(self, *args: int) -> ZVec:
        return self.chars[self.index(args)]

    def _compatible(self, other: "Cochain"):
        if self.module != other.module or self.degree != other.degree:
            raise ValueError("cochains live in different modules or degrees")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(
            self.module,
            self.degree,
            tuple(reduce_mod1(x + y) for x, y in zip(self.const, other.const)),
            tuple(tuple(p + q for p, q in zip(x, y)) for x, y in zip(self.chars, other.chars)),
        )

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        return Cochain(
            self.module,
            self.degree,
            tuple(reduce_mod1(k * x) for x in self.const),
            tuple(tuple(k * p for p in x) for x in self.chars),
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.module == other.module
            and self.degree == other.degree
            and self.const == other.const
            and self.chars == other.chars
        )

    def __hash__(self):
        return hash((self.degree, self.const, self.chars))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.const) and all(not any(v) for v in self.chars)

    def is_normalized(self) -> bool:
        for i, args in enumerate(itertools.product(self.group.elements, repeat=self.degree)):
            if 0 in args and (self.const[i] != 0 or any(self.chars[i])):
                return False
        return True

    def normalized_vectors(self):
        """Circle and lattice coordinates on normalized tuples, in order."""
        G = self.group
        consts, chars = [], []
        for args in itertools.product(G.nonidentity, repeat=self.degree):
            i = _flat(G.size, args)
            consts.append(self.const[i])
            chars.append(self.chars[i])
        return consts, chars

    def with_module(self, module: UnipotentModule) -> "Cochain":
        return Cochain(module, self.degree, self.const, self.chars)

    def circle_part(self) -> "Cochain":
        """The circle values alone, as a cochain in the trivial module."""
        return Cochain(trivial_module(self.group), self.degree, self.const, ((),) * len(self.const))


def from_normalized(module: UnipotentModule, degree: int, consts: Sequence, chars: Sequence) -> Cochain:
    G = module.group
    n = G.size**degree
    out_c = [ZERO] * n
    out_v = [(0,) * module.s] * n
    for j, args in enumerate(itertools.product(G.nonidentity, repeat=degree)):
        i = _flat(G.size, args)
        out_c[i] = reduce_mod1(consts[j])
        out_v[i] = tuple(int(x) for x in chars[j]) if module.s else ()
    return Cochain(module, degree, tuple(out_c), tuple(out_v))


def common_denominator(values) -> int:
    return reduce(lcm, (Fraction(x).denominator for x in values), 1)


def coboundary(f: Cochain) -> Cochain:
    module = f.module
    G = module.group
    N, k, s = G.size, f.degree, module.s
    mul = G.mul
    # work with integer numerators over one common denominator
    D = lcm(common_denominator(f.const), common_denominator(x for tw in module.twist for x in tw))
    const = [int(x * D) for x in f.const]
    twist = [[int(x * D) for x in tw] for tw in module.twist]
    chars = f.chars
    out_c, out_v = [], []
    for args in itertools.product(range(N), repeat=k + 1):
        a0 = args[0]
        j = _flat(N, args[1:])
        c = const[j]
        v = list(chars[j])
        if s:
            tw = twist[a0]
            c -= sum(p * q for p, q in zip(v, tw))
        sign = -1
        for i in range(1, k + 1):
            merged = args[: i - 1] + (mul[args[i]][args[i - 1]],) + args[i + 1 :]
            j = _flat(N, merged)
            c += sign * const[j]
            if s:
                v = [x + sign * y for x, y in zip(v, chars[j])]
            sign = -sign
        j = _flat(N, args[:k])
        c += sign * const[j]
        if s:
            v = [x + sign * y for x, y in zip(v, chars[j])]
        out_c.append(Fraction(c % D, D))
        out_v.append(tuple(v))
    return Cochain(module, k + 1, tuple(out_c), tuple(out_v))


def is_cocycle(f: Cochain) -> bool:
    return coboundary(f).is_zero()


def integer_coboundary_rows(G: FiniteGroup, k: int) -> List[List[int]]:
    """Matrix of d: C^k -> C^{k+1} on normalized cochains with trivial coefficients."""
    N = G.size
    base = N - 1
    ncols = base**k
    rows = []
    for args in itertools.product(range(1, N), repeat=k + 1):
        row = [0] * ncols
        terms = [(1, args[1:])]
        sign = -1
        for i in range(1, k + 1):
            terms.append((sign, args[: i - 1] + (G.mul[args[i]][args[i - 1]],) + args[i + 1 :]))
            sign = -sign
        terms.append((sign, args[:k]))
        for sgn, tup in terms:
            if 0 in tup:
                continue
            row[_flat(base, [a - 1 for a in tup])] += sgn
        rows.append(row)
    return rows


def smith_of_coboundary(G: FiniteGroup, k: int) -> SmithForm:
    key = ("smith", k)
    if key not in G._cache:
        G._cache[key] = SmithForm(integer_coboundary_rows(G, k), (G.size - 1) ** k)
    return G._cache[key]


@dataclass(frozen=True)
class CohomologyGroup:
    """A finite abelian group given by invariant factors d1 | d2 | ..."""

    invariant_factors: Tuple[int, ...]

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def torsion_count(self, q: int) -> int:
        """Number of elements killed by q."""
        from math import gcd

        return reduce(lambda x, d: x * gcd(d, q), self.invariant_factors, 1)

    def __str__(self):
        return "[" + ", ".join(map(str, self.invariant_factors)) + "]"


def cohomology_group(G: FiniteGroup, k: int) -> CohomologyGroup:
    """H^k(Gamma, Q/Z) for k in 1..3, read off the torsion of coker d_k."""
    if k not in (1, 2, 3):
        raise ValueError(f"unsupported degree {k}: only 1, 2 and 3 are available")
    if G.size == 1:
        return CohomologyGroup(())
    S = smith_of_coboundary(G, k)
    return CohomologyGroup(tuple(invariant_factors([d for d in S.diagonal if d > 1])))


def schur_multiplier(G: FiniteGroup) -> CohomologyGroup:
    return cohomology_group(G, 2)


def solve_coboundary(f: Cochain) -> Optional[Cochain]:
    """A normalized (k-1)-cochain g with dg = f, or None if f is not a coboundary.

    The lattice part is solved over Z first; when the integer kernel of the
    lattice coboundary is nontrivial, the freedom it leaves is folded into
    an augmented system over Q/Z so the answer is complete.
    """
    if f.degree < 1:
        raise ValueError("a 0-cochain is never a coboundary")
    if not f.is_normalized():
        raise ValueError("the solver expects a normalized cochain")
    if not is_cocycle(f):
        raise ValueError("the solver expects a cocycle")
    module = f.module
    G = module.group
    k = f.degree
    if G.size == 1:
        return Cochain.zero(module, k - 1) if f.is_zero() else None
    S = smith_of_coboundary(G, k - 1)
    g_const, g_chars = f.normalized_vectors()
    s = module.s
    rows = list(itertools.product(G.nonidentity, repeat=k))
    base = G.size - 1
    nprev = base ** (k - 1)
    t_part = []
    for j in range(s):
        tj = S.solve_integer([v[j] for v in g_chars])
        if tj is None:
            return None
        t_part.append(tj)

    def twist_term(t_cols):
        # circle contribution of a0^{-1}.(0, t(a1..)) on each row
        out = []
        for args in rows:
            rest = args[1:]
            if 0 in rest:
                out.append(ZERO)
                continue
            idx = _flat(base, [a - 1 for a in rest])
            tau = module.twist[args[0]]
            out.append(-sum((tau[j] * t_cols[j][idx] for j in range(s)), ZERO))
        return out

    resid = list(g_const)
    if s:
        resid = [x - y for x, y in zip(resid, twist_term(t_part))]
    kernel = S.kernel_basis() if s else []
    if not kernel:
        sol = S.solve_mod1(resid)
        if sol is None:
            return None
        result = from_normalized(module, k - 1, sol, list(zip(*t_part)) if s else [()] * nprev)
    else:
        result = _solve_augmented(module, k, S, resid, t_part, kernel, twist_term, nprev)
        if result is None:
            return None
    if coboundary(result) != f:
        raise InvariantBreach("coboundary solver produced a wrong witness")
    return result


def _solve_augmented(module, k, S, resid, t_part, kernel, twist_term, nprev):
    s = module.s
    D = integer_coboundary_rows(module.group, k - 1)
    extra = []
    for j in range(s):
        for K in kernel:
            cols = [[0] * nprev for _ in range(s)]
            cols[j] = K
            extra.append(twist_term(cols))
    Q = reduce(lcm, (x.denominator for col in extra for x in col), 1)
    nrow = len(D)
    m = len(extra)
    M = [list(D[i]) + [int(Q * extra[l][i]) for l in range(m)] for i in range(nrow)]
    for l in range(m):
        M.append([0] * nprev + [Q if l2 == l else 0 for l2 in range(m)])
    sol = SmithForm(M, nprev + m).solve_mod1(list(resid) + [ZERO] * m)
    if sol is None:
        return None
    lam = [int(Q * x) for x in sol[nprev:]]
    t_full = [list(t) for t in t_part]
    pos = 0
    for j in range(s):
        for K in kernel:
            if lam[pos]:
                t_full[j] = [x + lam[pos] * y for x, y in zip(t_full[j], K)]
            pos += 1
    return from_normalized(module, k - 1, sol[:nprev], list(zip(*t_full)))


def is_coboundary(f: Cochain) -> bool:
    return solve_coboundary(f) is not None


def is_cohomologous(f1: Cochain, f2: Cochain) -> bool:
    return solve_coboundary(f1 - f2) is not None


def random_cocycle(G: FiniteGroup, k: int, rng: random.Random, free_denominators: Sequence[int] = (2, 3, 4, 6)) -> Cochain:
    """A random normalized k-cocycle with trivial coefficients.

    Torsion directions are sampled from their full cyclic range; directions
    that are coboundaries get random values with the given denominators.
    """
    module = trivial_module(G)
    if G.size == 1:
        return Cochain.zero(module, k)
    S = smith_of_coboundary(G, k)
    y = [ZERO] * S.ncols
    for j in range(S.ncols):
        if j < S.rank:
            d = S.diagonal[j]
            if d > 1:
                y[j] = Fraction(rng.randrange(d), d)
        else:
            q = rng.choice(free_denominators)
            y[j] = Fraction(rng.randrange(q), q)
    x = [reduce_mod1(v) for v in S.right(y)]
    out = from_normalized(module, k, x, [()] * len(x))
    if not is_cocycle(out):
        raise InvariantBreach("sampled cochain is not a cocycle")
    return out


def random_cochain(module: UnipotentModule, k: int, rng: random.Random, denominators=(2, 3, 4), lattice_bound: int = 2) -> Cochain:
    """Random normalized cochain, used to perturb cocycles by coboundaries."""

    def f(*args):
        if 0 in args:
            return ZERO, (0,) * module.s
        q = rng.choice(denominators)
        return Fraction(rng.randrange(q), q), tuple(rng.randint(-lattice_bound, lattice_bound) for _ in range(module.s))

    return Cochain.from_function(module, k, f)
