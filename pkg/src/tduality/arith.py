"""Exact circle arithmetic.

U(1) is written additively as Q/Z: a circle value is a :class:`Fraction`
normalised into ``[0, 1)``.  Torus points are tuples of such values, their
lifts into R^n are tuples of plain rationals, and lattice vectors (elements of
Z^n, or character indices of the torus) are tuples of ints.

Both sections of the quotient maps R^n -> T^n and its dual are the
fundamental-domain lift into ``[0, 1)^n``; with that choice every quantity in
this package is rational and nothing is ever evaluated in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple

QmodZ = Fraction
QVec = Tuple[Fraction, ...]
ZVec = Tuple[int, ...]
QmodZVec = Tuple[Fraction, ...]

ZERO = Fraction(0)


def as_fraction(q) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: a float has no business standing in for a circle
    value here.
    """
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q.strip())
    raise TypeError(f"expected an exact rational, got {type(q).__name__}")


def reduce_mod1(q) -> QmodZ:
    q = as_fraction(q)
    n, d = q.numerator, q.denominator
    if 0 <= n < d:
        return q
    return Fraction(n % d, d)


def qvec(entries: Iterable) -> QVec:
    return tuple(as_fraction(x) for x in entries)


def zvec(entries: Iterable) -> ZVec:
    out = []
    for x in entries:
        if isinstance(x, bool) or not isinstance(x, int):
            x = as_fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral lattice entry {x}")
            x = x.numerator
        out.append(int(x))
    return tuple(out)


def torus_point(entries: Iterable) -> QmodZVec:
    return tuple(reduce_mod1(x) for x in entries)


def zero_vec(n: int) -> tuple:
    return (0,) * n


def _check_lengths(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")


def pair(m: Sequence[int], z: Sequence) -> QmodZ:
    """Pairing of a lattice vector with a torus point, ``sum m_i z_i mod 1``."""
    _check_lengths(m, z)
    return reduce_mod1(sum((mi * as_fraction(zi) for mi, zi in zip(m, z)), ZERO))


def pair_lift(u: Sequence, v: Sequence) -> QmodZ:
    """Pairing of two rational lifts (dual group against group), mod 1."""
    _check_lengths(u, v)
    return reduce_mod1(sum((as_fraction(a) * as_fraction(b) for a, b in zip(u, v)), ZERO))


def section_lift(z: Sequence) -> QVec:
    # reduce_mod1 is already the fundamental-domain representative
    return tuple(reduce_mod1(x) for x in z)


def vadd(u: Sequence, v: Sequence) -> tuple:
    _check_lengths(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    _check_lengths(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def vscale(k: int, u: Sequence) -> tuple:
    return tuple(k * a for a in u)


def tadd(u: Sequence, v: Sequence) -> QmodZVec:
    """Sum of torus points."""
    _check_lengths(u, v)
    return tuple(reduce_mod1(a + b) for a, b in zip(u, v))


def tneg(u: Sequence) -> QmodZVec:
    return tuple(reduce_mod1(-a) for a in u)


def tscale(k: int, u: Sequence) -> QmodZVec:
    return tuple(reduce_mod1(k * a) for a in u)


def is_integral(u: Sequence) -> bool:
    return all(as_fraction(x).denominator == 1 for x in u)


def to_zvec(u: Sequence) -> ZVec:
    """Convert an integral rational vector to ints, raising otherwise."""
    if not is_integral(u):
        raise ValueError(f"vector {fmt_vec(u)} is not integral")
    return tuple(int(as_fraction(x)) for x in u)


def fmt_rational(q) -> str:
    """Serialize as ``"p/q"`` with q > 0 (integers keep the ``/1``)."""
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_vec(u: Sequence) -> list:
    return [fmt_rational(x) for x in u]


def parse_rational(s) -> Fraction:
    if isinstance(s, float):
        raise TypeError("floats are not accepted; write rationals as 'p/q'")
    return as_fraction(s)
