"""Multi-indices are plain tuples of non-negative ints.

Graded-lex order: higher total degree first is the *printing* order; inside
one grade the tuples are listed in decreasing lexicographic order, so for
n=2, m=2 the grade reads (2,0), (1,1), (0,2).
"""

from __future__ import annotations

import math
from itertools import combinations

from .errors import DimensionMismatch, ExponentOverflow

# Exponents are capped at the signed 64-bit range so behaviour matches a
# fixed-width implementation; Python ints would otherwise grow silently.
MAX_EXPONENT = 2**63 - 1


def check_index(alpha, n: int | None = None) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if n is not None and len(alpha) != n:
        raise DimensionMismatch(f"multi-index {alpha} does not have dimension {n}")
    for a in alpha:
        if a < 0:
            raise ValueError(f"negative entry in multi-index {alpha}")
        if a > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {a} exceeds {MAX_EXPONENT}")
    if sum(alpha) > MAX_EXPONENT:
        raise ExponentOverflow(f"|{alpha}| exceeds {MAX_EXPONENT}")
    return alpha


def norm(alpha) -> int:
    return sum(alpha)


def factorial(alpha) -> int:
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def add(alpha, beta) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha, beta) -> tuple[int, ...]:
    out = tuple(a - b for a, b in zip(alpha, beta))
    if any(c < 0 for c in out):
        raise ValueError(f"{beta} is not <= {alpha}")
    return out


def leq(alpha, beta) -> bool:
    return all(a <= b for a, b in zip(alpha, beta))


def unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if k == j else 0 for k in range(n))


def zero(n: int) -> tuple[int, ...]:
    return (0,) * n


def enumerate_multiindices(n: int, m: int) -> list[tuple[int, ...]]:
    """All ``nu`` in N^n with ``|nu| == m``, decreasing lexicographic order.

    Stars and bars: the bar positions are generated in increasing order,
    which yields the exponent tuples in decreasing lex order.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if m < 0:
        return []
    out = []
    for bars in combinations(range(m + n - 1), n - 1):
        prev = -1
        nu = []
        for b in bars:
            nu.append(b - prev - 1)
            prev = b
        nu.append(m + n - 2 - prev)
        out.append(tuple(nu))
    out.reverse()
    return out


def graded(n: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    """Multi-indices with ``lo <= |nu| <= hi``, grade by grade ascending."""
    out = []
    for m in range(lo, hi + 1):
        out.extend(enumerate_multiindices(n, m))
    return out


def below(nu) -> list[tuple[int, ...]]:
    """All ``beta`` with ``0 < beta <= nu``, ascending grade, lex-decreasing inside."""
    boxes = [()]
    for a in nu:
        boxes = [b + (k,) for b in boxes for k in range(a + 1)]
    boxes = [b for b in boxes if any(b)]
    boxes.sort(key=lambda b: (sum(b), tuple(-x for x in b)))
    return boxes


def print_key(alpha):
    """Sort key putting higher total degree first, then decreasing lex."""
    return (-sum(alpha), tuple(-a for a in alpha))
