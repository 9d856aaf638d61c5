"""Multinomial coefficients, exponent-vector enumeration, and elementary
symmetric constants.

Everything here is exact big-integer arithmetic; for n = 4 and total degree
around 10 the multinomials already overflow 64 bits.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence


def multinomial(alpha: Sequence[int]) -> int:
    """Multinomial coefficient ``(sum alpha)! / prod(alpha_i!)``.

    Returns 0 if any component is negative, matching the convention used by
    the polynomial-expansion machinery (shifted exponent vectors routinely
    leave the non-negative orthant and must contribute nothing).
    """
    total = 0
    for a in alpha:
        if a < 0:
            return 0
        total += a
    out = math.factorial(total)
    for a in alpha:
        out //= math.factorial(a)
    return out


def tuple_multiplicity(idx: Sequence[int]) -> int:
    """Number of distinct permutations of an index tuple: d!/prod(count_i!)."""
    counts: dict[int, int] = {}
    for i in idx:
        counts[i] = counts.get(i, 0) + 1
    return multinomial(list(counts.values()))


@lru_cache(maxsize=None)
def enumerate_exponents(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All compositions of d into n non-negative parts, lexicographic order.

    Length is binomial(n+d-1, d).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 0:
        raise ValueError("d must be >= 0")
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d + 1):
        for rest in enumerate_exponents(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def elementary_symmetric(k: int, m: int) -> int:
    """e_k(1, 2, ..., m); e_0 = 1 and e_k = 0 for k > m."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    if k > m:
        return 0
    # e_k(1..m) = e_k(1..m-1) + m * e_{k-1}(1..m-1)
    return elementary_symmetric(k, m - 1) + m * elementary_symmetric(k - 1, m - 1)


def falling_factorial(x: int, k: int) -> int:
    """x (x-1) ... (x-k+1); empty product for k = 0."""
    out = 1
    for j in range(k):
        out *= x - j
    return out


def index_counts(idx: Iterable[int], n: int) -> tuple[int, ...]:
    """Occurrence counts of each index 1..n in an index tuple."""
    counts = [0] * n
    for i in idx:
        counts[i - 1] += 1
    return tuple(counts)
