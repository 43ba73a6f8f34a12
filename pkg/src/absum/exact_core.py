"""Exact integer primitives: binomials, Pascal rows and Laurent polynomials.

Python's ``int`` is arbitrary precision, so it plays the role of both the
natural and the signed big-integer types used throughout the package.
"""
from __future__ import annotations

from typing import Iterable, Mapping

__all__ = [
    "binomial",
    "pascal_row",
    "LaurentPoly",
    "poly_binomial_power",
    "apply_x_ddx",
    "eval_at_one",
]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the zero-outside-range convention.

    Returns 0 whenever ``k < 0``, ``k > n`` or ``n < 0``.  Otherwise the
    multiplicative formula is used; every intermediate division is exact
    because the running product is itself a binomial coefficient.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    k = min(k, n - k)
    c = 1
    for i in range(1, k + 1):
        # c == C(n - k + i - 1, i - 1) before this step
        c = c * (n - k + i) // i
    return c


def pascal_row(n: int) -> list[int]:
    """Row ``n`` of Pascal's triangle, ``[C(n,0), ..., C(n,n)]``."""
    if n < 0:
        raise ValueError(f"row index must be non-negative, got {n}")
    row = [1] * (n + 1)
    c = 1
    for j in range(n // 2):
        c = c * (n - j) // (j + 1)
        row[j + 1] = row[n - j - 1] = c
    return row


class LaurentPoly:
    """Sparse integer Laurent polynomial, stored as ``{exponent: coeff}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    map.  Instances are treated as immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        self._coeffs = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coeff(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def support(self) -> tuple[int, int] | None:
        """(lowest, highest) exponent, or None for the zero polynomial."""
        if not self._coeffs:
            return None
        return min(self._coeffs), max(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self == LaurentPoly(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._coeffs.items()))
        return f"LaurentPoly({{{body}}})"

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not supported")
        result = LaurentPoly({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def poly_binomial_power(k: int) -> LaurentPoly:
    """The generating function ``x**-k * (1 + x)**(2k)``.

    The coefficient of ``x**p`` is ``C(2k, k + p)``; the expansion is read
    straight off row ``2k`` of Pascal's triangle.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return LaurentPoly({j - k: c for j, c in enumerate(pascal_row(2 * k))})


def apply_x_ddx(f: LaurentPoly) -> LaurentPoly:
    """Apply ``x d/dx``: multiplies the coefficient of ``x**p`` by ``p``."""
    return LaurentPoly({e: e * c for e, c in f.coeffs.items()})


def eval_at_one(f: LaurentPoly) -> int:
    return sum(f.coeffs.values())
