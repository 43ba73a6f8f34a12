"""Monte Carlo estimates of E|p| and E|p^2 - q^2| for the half-sum of 2k fair signs.

``p`` is half the sum of ``2k`` independent uniform +-1 draws, so
``P(p) = C(2k, k+p) / 4**k``.  The exact expectations are S0 / 4**k and
S1 / 16**k; they are carried as :class:`fractions.Fraction` and only turned
into floats for the final z-score.

Randomness comes from Philox4x64, a counter-based generator.  Samples are
produced in fixed-size blocks and block ``b`` of a stream uses counter word
``b``, so every block is reproducible on its own and the merged estimate
does not depend on how blocks are spread over threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import stats

from .exact_core import binomial
from .identities import s0_closed, s1_closed

__all__ = [
    "ALGORITHM",
    "RngSpec",
    "MCEstimate",
    "RunningMoments",
    "block_generator",
    "sample_offset",
    "sample_offsets",
    "mc_mean_abs",
    "mc_mean_absdiffsq",
    "check_estimate",
    "offset_law_test",
]

ALGORITHM = "philox4x64-10"
BLOCK = 1 << 16
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    stream: int = 0
    algorithm: str = ALGORITHM

    def __post_init__(self):
        if self.algorithm != ALGORITHM:
            raise ValueError(f"unsupported generator {self.algorithm!r}")
        for name in ("seed", "stream"):
            v = getattr(self, name)
            if not 0 <= v <= _U64:
                raise ValueError(f"{name} must fit in 64 bits, got {v}")

    def next_stream(self) -> "RngSpec":
        return replace(self, stream=(self.stream + 1) & _U64)


@dataclass(frozen=True)
class MCEstimate:
    n: int
    mean: float
    stderr: float
    target: Fraction
    seed: int
    stream: int = 0
    algorithm: str = ALGORITHM

    @property
    def z(self) -> float:
        diff = self.mean - float(self.target)
        if self.stderr > 0:
            return diff / self.stderr
        return 0.0 if diff == 0 else math.copysign(math.inf, diff)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "mean": self.mean,
            "stderr": self.stderr,
            "target": f"{self.target.numerator}/{self.target.denominator}",
            "z": self.z,
            "seed": self.seed,
            "stream": self.stream,
            "algorithm": self.algorithm,
        }


@dataclass(frozen=True)
class RunningMoments:
    """Count, mean and sum of squared deviations; merged pairwise (Chan et al.)."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, x: np.ndarray) -> "RunningMoments":
        if x.size == 0:
            return cls()
        mean = float(x.mean())
        return cls(int(x.size), mean, float(((x - mean) ** 2).sum()))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.n == 0:
            return self
        if self.n == 0:
            return other
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return RunningMoments(n, mean, m2)

    @property
    def stderr(self) -> float:
        if self.n < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.n - 1) / self.n)


def _merge_all(parts: list[RunningMoments]) -> RunningMoments:
    # balanced tree keeps rounding error logarithmic in the block count
    while len(parts) > 1:
        parts = [
            parts[i].merge(parts[i + 1]) if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0] if parts else RunningMoments()


def block_generator(spec: RngSpec, block: int) -> np.random.Generator:
    """Generator for block ``block`` of ``spec``'s stream."""
    bitgen = np.random.Philox(key=[spec.seed, spec.stream], counter=[0, 0, 0, block])
    return np.random.Generator(bitgen)


def sample_offsets(k: int, size: int, gen: np.random.Generator) -> np.ndarray:
    """``size`` draws of ``p``: (number of +1 among 2k fair signs) - k."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    bits = 2 * k
    plus = np.zeros(size, dtype=np.int64)
    while bits > 0:
        take = min(bits, 64)
        words = gen.bit_generator.random_raw(size).astype(np.uint64, copy=False)
        if take < 64:
            words &= np.uint64((1 << take) - 1)
        plus += np.bitwise_count(words)
        bits -= take
    return plus - k


def sample_offset(k: int, gen: np.random.Generator) -> int:
    return int(sample_offsets(k, 1, gen)[0])


def _estimate(
    statistic: Callable[[np.random.Generator, int], np.ndarray],
    n: int,
    spec: RngSpec,
    target: Fraction,
    workers: int,
) -> MCEstimate:
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    sizes = [min(BLOCK, n - s) for s in range(0, n, BLOCK)]

    def run(b: int) -> RunningMoments:
        return RunningMoments.of(statistic(block_generator(spec, b), sizes[b]))

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(b) for b in range(len(sizes))]
    acc = _merge_all(parts)
    return MCEstimate(n, acc.mean, acc.stderr, target, spec.seed, spec.stream, spec.algorithm)


def mc_mean_abs(k: int, n: int, spec: RngSpec, workers: int = 1) -> MCEstimate:
    """Estimate ``E|p|``; exact value ``k C(2k,k) / 4**k``."""
    target = Fraction(s0_closed(k), 4**k)
    return _estimate(
        lambda g, m: np.abs(sample_offsets(k, m, g)).astype(np.float64),
        n, spec, target, workers,
    )


def mc_mean_absdiffsq(k: int, n: int, spec: RngSpec, workers: int = 1) -> MCEstimate:
    """Estimate ``E|p^2 - q^2|`` for independent ``p, q``; exact ``2k^2 C(2k,k)^2 / 16**k``."""
    target = Fraction(s1_closed(k), 16**k)

    def stat(g: np.random.Generator, m: int) -> np.ndarray:
        p = sample_offsets(k, m, g)
        q = sample_offsets(k, m, g)
        return np.abs(p * p - q * q).astype(np.float64)

    return _estimate(stat, n, spec, target, workers)


def check_estimate(
    estimator: Callable[[int, int, RngSpec], MCEstimate],
    k: int,
    n: int,
    spec: RngSpec,
    z_max: float = 5.0,
) -> tuple[str, MCEstimate]:
    """Run ``estimator`` and grade it: PASS, WARN (passed on a fresh stream) or FAIL.

    A first exceedance of ``z_max`` is retried once on the next stream.
    """
    est = estimator(k, n, spec)
    if abs(est.z) <= z_max:
        return "PASS", est
    retry = estimator(k, n, spec.next_stream())
    return ("WARN" if abs(retry.z) <= z_max else "FAIL"), retry


def offset_law_test(
    k: int, n: int, spec: RngSpec, p_floor: float = 1e-4, min_expected: float = 5.0
) -> tuple[bool, float]:
    """Chi-squared goodness of fit of sampled ``p`` against ``C(2k,k+p)/4**k``.

    Outer bins are pooled inward until every bin expects at least
    ``min_expected`` draws.  Returns ``(passed, p_value)``.
    """
    gen = block_generator(spec, 0)
    draws = sample_offsets(k, n, gen)
    observed = np.bincount(draws + k, minlength=2 * k + 1).astype(np.float64)
    expected = np.array(
        [n * binomial(2 * k, j) / 4**k for j in range(2 * k + 1)], dtype=np.float64
    )
    if k == 0:
        return bool(observed[0] == n), 1.0
    lo, hi = 0, 2 * k
    while lo < hi and expected[lo] < min_expected:
        expected[lo + 1] += expected[lo]
        observed[lo + 1] += observed[lo]
        lo += 1
    while hi > lo and expected[hi] < min_expected:
        expected[hi - 1] += expected[hi]
        observed[hi - 1] += observed[hi]
        hi -= 1
    obs, exp = observed[lo : hi + 1], expected[lo : hi + 1]
    if obs.size < 2:
        return True, 1.0
    exp *= obs.sum() / exp.sum()
    pvalue = float(stats.chisquare(obs, exp).pvalue)
    return pvalue >= p_floor, pvalue
