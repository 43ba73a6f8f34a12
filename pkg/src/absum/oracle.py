"""Brute-force oracle: enumerate every sign vector in {-1, +1}^(2k).

Nothing here touches a binomial formula.  Index ``i`` in ``[0, 2**(2k))``
encodes a sign vector through its bits (1 -> +1, 0 -> -1), so the vector
has ``popcount(i)`` plus signs and half-sum ``p = popcount(i) - k``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "K_ORACLE",
    "OracleLimitError",
    "SumHistogram",
    "enumerate_histogram",
    "oracle_s0",
    "oracle_s1",
]

K_ORACLE = 10
_CHUNK = 1 << 18


class OracleLimitError(ValueError):
    """Requested k exceeds the enumeration cost guard."""


@dataclass(frozen=True)
class SumHistogram:
    k: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, p: int) -> int:
        return self.counts.get(p, 0)

    def is_symmetric(self) -> bool:
        return all(self.counts.get(-p, 0) == c for p, c in self.counts.items())


def _count_range(k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    return np.bincount(np.bitwise_count(idx), minlength=2 * k + 1)


def enumerate_histogram(k: int, k_max: int = K_ORACLE, workers: int = 1) -> SumHistogram:
    """Histogram of half-sums ``p`` over all ``4**k`` sign vectors of length ``2k``.

    The index space is cut into fixed chunks; partial histograms are added
    pointwise, so the result does not depend on ``workers``.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k > k_max:
        raise OracleLimitError(f"k={k} exceeds the enumeration limit {k_max}")
    n = 1 << (2 * k)
    bounds = [(s, min(s + _CHUNK, n)) for s in range(0, n, _CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _count_range(k, *b), bounds))
    else:
        parts = [_count_range(k, *b) for b in bounds]
    by_popcount = np.sum(parts, axis=0, dtype=np.int64)
    counts = {pc - k: int(c) for pc, c in enumerate(by_popcount) if c}
    return SumHistogram(k, counts)


def oracle_s0(k: int, k_max: int = K_ORACLE) -> int:
    h = enumerate_histogram(k, k_max)
    return sum(c * abs(p) for p, c in h.counts.items())


def oracle_s1(k: int, k_max: int = K_ORACLE) -> int:
    # p and q are independent, so the pair sum factors through one histogram
    h = enumerate_histogram(k, k_max)
    items = list(h.counts.items())
    return sum(cp * cq * abs(p * p - q * q) for p, cp in items for q, cq in items)
