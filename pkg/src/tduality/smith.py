"""Smith normal form over the integers, with replayable transforms.

``U A V = S`` with ``S`` diagonal and positive, but not necessarily a
divisibility chain; callers that need invariant factors go through
elementary divisors instead.  ``U`` is never materialised: the row
operations are logged and replayed on right-hand sides.  ``V`` is kept
dense, built by applying the column operations to the identity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import List, Optional, Sequence


# row operation log entries
_SWAP, _ADD, _NEG = 0, 1, 2


class SmithForm:
    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        A = [list(map(int, r)) for r in rows]
        m, n = len(A), ncols
        if any(len(r) != n for r in A):
            raise ValueError("ragged matrix")
        self.nrows, self.ncols = m, n
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        ops: list = []
        diag: List[int] = []
        t = 0
        while t < m and t < n:
            jcol = next((j for j in range(t, n) if any(A[i][j] for i in range(t, m))), None)
            if jcol is None:
                break
            if jcol != t:
                _swap_cols(A, V, t, jcol, t)
            while True:
                p = min((i for i in range(t, m) if A[i][t]), key=lambda i: abs(A[i][t]))
                if p != t:
                    A[t], A[p] = A[p], A[t]
                    ops.append((_SWAP, t, p))
                piv = A[t][t]
                clean = True
                rt = A[t]
                support = [j for j in range(t, n) if rt[j]]
                for i in range(t + 1, m):
                    x = A[i][t]
                    if x:
                        q = x // piv
                        ri = A[i]
                        for j in support:
                            ri[j] -= q * rt[j]
                        ops.append((_ADD, i, t, -q))
                        if ri[t]:
                            clean = False
                if not clean:
                    continue
                for j in range(t + 1, n):
                    x = rt[j]
                    if x:
                        q = x // piv
                        rt[j] -= q * piv
                        for row in V:
                            row[j] -= q * row[t]
                        if rt[j]:
                            clean = False
                if not clean:
                    jm = min((j for j in range(t, n) if rt[j]), key=lambda j: abs(rt[j]))
                    _swap_cols(A, V, t, jm, t)
                    continue
                break
            if A[t][t] < 0:
                A[t][t] = -A[t][t]
                ops.append((_NEG, t))
            diag.append(A[t][t])
            t += 1
        self.diagonal = diag
        self.rank = len(diag)
        self._ops = ops
        self._V = V

    def left(self, vec: Sequence) -> list:
        """Apply U to a column vector (any ring of numbers)."""
        v = list(vec)
        if len(v) != self.nrows:
            raise ValueError("left vector has the wrong length")
        for op in self._ops:
            if op[0] == _SWAP:
                _, i, j = op
                v[i], v[j] = v[j], v[i]
            elif op[0] == _ADD:
                _, i, j, q = op
                v[i] += q * v[j]
            else:
                v[op[1]] = -v[op[1]]
        return v

    def right(self, vec: Sequence) -> list:
        """Apply V to a column vector."""
        if len(vec) != self.ncols:
            raise ValueError("right vector has the wrong length")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        return [sum((row[j] * x for j, x in nz), 0) for row in self._V]

    def kernel_basis(self) -> List[List[int]]:
        """Z-basis of the integer kernel: the trailing columns of V."""
        return [[row[j] for row in self._V] for j in range(self.rank, self.ncols)]

    def solve_integer(self, rhs: Sequence[int]) -> Optional[List[int]]:
        r = self.left(rhs)
        y = [0] * self.ncols
        for i, x in enumerate(r):
            if i < self.rank:
                d = self.diagonal[i]
                if x % d:
                    return None
                y[i] = x // d
            elif x:
                return None
        return self.right(y)

    def solve_mod1(self, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """A solution x in (Q/Z)^n of A x = rhs mod 1, or None."""
        rhs = [Fraction(x) for x in rhs]
        D = reduce(lcm, (x.denominator for x in rhs), 1)
        r = self.left([int(x * D) for x in rhs])
        E = D * reduce(lcm, self.diagonal, 1)
        y = [0] * self.ncols
        for i, x in enumerate(r):
            if i < self.rank:
                y[i] = x * (E // (D * self.diagonal[i]))
            elif x % D:
                return None
        return [Fraction(x % E, E) for x in self.right(y)]

    def cycle_parametrisation(self):
        """Generators of the mod-1 kernel {x : A x = 0 mod 1}.

        Returns pairs (column of V, order); the kernel is generated by
        column j over (1/order) Z/Z, order 0 meaning all of Q/Z.
        """
        out = []
        for j in range(self.ncols):
            col = [row[j] for row in self._V]
            if j < self.rank:
                d = self.diagonal[j]
                if d > 1:
                    out.append((col, d))
            else:
                out.append((col, 0))
        return out


def _swap_cols(A, V, a, b, start):
    for i in range(start, len(A)):
        r = A[i]
        r[a], r[b] = r[b], r[a]
    for r in V:
        r[a], r[b] = r[b], r[a]


def elementary_divisors(diagonal: Sequence[int]) -> List[int]:
    out = []
    for d in diagonal:
        for p, e in _factor(d).items():
            out.append(p**e)
    return sorted(out)


def invariant_factors(diagonal: Sequence[int]) -> List[int]:
    """Invariant factors d1 | d2 | ... of the torsion module with the given diagonal."""
    by_prime: dict = {}
    for d in diagonal:
        for p, e in _factor(d).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for k, e in enumerate(exps):
            factors[length - 1 - k] *= p**e
    return factors


def _factor(n: int) -> dict:
    n = abs(n)
    out: dict = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out
