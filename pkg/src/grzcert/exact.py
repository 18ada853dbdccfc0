"""Exact combinatorics kernel.

Scalars are :class:`fractions.Fraction`; plain ``int`` values are accepted
wherever a rational is expected, since ``int`` is the integral subset of
``numbers.Rational`` and mixes exactly with ``Fraction``.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidParameterError

Rational = Fraction

#: Rational upper envelope for Euler's number, used for the ``e * r`` bound.
E_UPPER = Fraction(271829, 100000)

_BINOMIAL_TABLE_LIMIT = 64

_factorials: list[int] = [1]
_factorial_lock = threading.Lock()


def factorial(n: int) -> int:
    """Memoized ``n!``; the table only ever grows."""
    if n < 0:
        raise InvalidParameterError(f"factorial of negative integer {n}")
    if n < len(_factorials):
        return _factorials[n]
    with _factorial_lock:
        table = _factorials
        while len(table) <= n:
            table.append(table[-1] * len(table))
        return table[n]


def binomial(n: int, k: int) -> int:
    """``C(n, k)`` for ``n >= 0``; zero outside ``0 <= k <= n``."""
    if n < 0:
        raise InvalidParameterError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    if n <= _BINOMIAL_TABLE_LIMIT:
        return factorial(n) // (factorial(k) * factorial(n - k))
    return math.comb(n, k)


def multinomial(n: int, beta: Sequence[int]) -> int:
    """``n! / (beta_1! ... beta_r!)``, or 0 when ``sum(beta) != n`` or an entry is negative.

    The zero convention is what lets shifted exponent vectors ``beta - j*1``
    drop out of the block-coefficient sums without special cases.
    """
    total = 0
    for b in beta:
        if b < 0:
            return 0
        total += b
    if total != n or n < 0:
        return 0
    out = factorial(n)
    for b in beta:
        if b > 1:
            out //= factorial(b)
    return out


@dataclass(frozen=True)
class PaperConstants:
    r: int
    c: Fraction
    root_bound: Fraction


def root_bound(r: int) -> Fraction:
    """``r^r / (r-1)^(r-1)``, the open upper bound for roots of ``h(s)``."""
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    return Fraction(r**r, (r - 1) ** (r - 1))


def paper_constants(r: int) -> PaperConstants:
    if r < 2:
        raise InvalidParameterError(f"r must be >= 2, got {r}")
    bound = root_bound(r)
    c = Fraction(r**r * factorial(r), (r - 1) ** (r - 1))
    assert c == factorial(r) * bound
    assert bound < E_UPPER * r
    return PaperConstants(r=r, c=c, root_bound=bound)


def elementary_symmetric(values: Sequence[Fraction]) -> list[Fraction]:
    """``[sigma_0, ..., sigma_n]`` of ``values`` via the product ``prod(1 + v x)``."""
    sig: list[Fraction] = [Fraction(1)]
    for v in values:
        sig.append(Fraction(0))
        for j in range(len(sig) - 1, 0, -1):
            sig[j] += v * sig[j - 1]
    return sig


def partitions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into at most ``parts`` parts, zero-padded to length ``parts``.

    Yields non-increasing tuples in reverse lexicographic order, so
    ``(total, 0, ..., 0)`` comes first.
    """
    if total < 0 or parts < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return

    prefix: list[int] = []

    def rec(remaining: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if remaining <= cap:
                yield tuple(prefix) + (remaining,)
            return
        # the remaining slots each hold at most `first`, so first >= ceil(remaining / slots)
        low = -(-remaining // slots)
        for first in range(min(cap, remaining), low - 1, -1):
            prefix.append(first)
            yield from rec(remaining - first, slots - 1, first)
            prefix.pop()

    yield from rec(total, parts, total)


def partition_count(total: int, parts: int) -> int:
    """Number of partitions of ``total`` into at most ``parts`` parts."""
    if total < 0 or parts < 0:
        return 0
    # ways[m] = partitions of m into parts of size <= j, iterating j; conjugation
    # turns "at most `parts` parts" into "parts of size at most `parts`"
    ways = [1] + [0] * total
    for size in range(1, min(parts, total) + 1):
        for m in range(size, total + 1):
            ways[m] += ways[m - size]
    return ways[total]


def orbit_size(beta: Sequence[int]) -> int:
    """Number of distinct permutations of ``beta``."""
    out = factorial(len(beta))
    for mult in Counter(beta).values():
        out //= factorial(mult)
    return out
