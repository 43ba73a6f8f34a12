"""Exact evaluation of the named binomial sums and checks of each proof step.

Notation used throughout: for a fixed ``k``,

* ``S0 = sum_p C(2k, k+p) |p|``
* ``S1 = sum_{p,q} C(2k, k+p) C(2k, k+q) |p^2 - q^2|``
* ``S2`` is the part of ``S1`` with ``p == 0`` or ``q == 0``
* ``S3 = S1 - S2`` is the part with ``p != 0`` and ``q != 0``.

Every direct sum runs over ``p, q`` in ``[-k-2, k+2]``; the extra two
offsets on each side are zero by the binomial convention and are kept on
purpose so the boundary of the support is exercised.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from operator import mul
from typing import Iterable

from .exact_core import (
    apply_x_ddx,
    binomial,
    eval_at_one,
    pascal_row,
    poly_binomial_power,
)

__all__ = [
    "IdentityId",
    "IdentityReport",
    "IdentityFailure",
    "Moment",
    "s0_direct",
    "s0_closed",
    "verify_eq1",
    "verify_p_rewrite",
    "moment",
    "abs_moment",
    "moment_via_genfun",
    "s1_direct",
    "s1_closed",
    "s2_direct",
    "s2_closed",
    "s3_direct",
    "s3_direct_full",
    "s3_closed",
    "verify_decomposition_term",
    "verify_trinomial",
    "telescope_forms",
    "verify_telescope",
    "verify_recombination",
    "verify_lemma1",
    "verify_theorem1",
    "verify_moment2",
    "verify_odd_moments",
    "verify_s2_closed",
    "verify_s3_closed",
    "verify_all",
    "all_passed",
]

PAD = 2


class IdentityId(str, enum.Enum):
    LEMMA1 = "LEMMA1"
    THEOREM1 = "THEOREM1"
    EQ1 = "EQ1"
    P_REWRITE = "P_REWRITE"
    S2_CLOSED = "S2_CLOSED"
    S3_CLOSED = "S3_CLOSED"
    DECOMP = "DECOMP"
    TRINOMIAL = "TRINOMIAL"
    TELESCOPE = "TELESCOPE"
    RECOMBINE = "RECOMBINE"
    MOMENT2 = "MOMENT2"
    ODD_MOMENT = "ODD_MOMENT"


class IdentityFailure(ArithmeticError):
    """Raised when an exact step that must succeed (e.g. division by 8) fails."""


@dataclass(frozen=True)
class IdentityReport:
    identity_id: IdentityId
    k: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        # decimal strings: values leave the 64-bit range quickly
        return {
            "identity": self.identity_id.value,
            "k": self.k,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
        }


@dataclass(frozen=True)
class Moment:
    k: int
    order: int
    value: int
    absolute: bool = False


def _check_k(k: int, minimum: int = 0) -> None:
    if k < minimum:
        raise ValueError(f"k must be >= {minimum}, got {k}")


def _offsets(k: int) -> range:
    return range(-k - PAD, k + PAD + 1)


def _row_weights(n: int, k: int) -> list[int]:
    """``[C(n, k+p) for p in _offsets(k)]`` using one Pascal row."""
    row = pascal_row(n) if n >= 0 else []
    out = []
    for p in _offsets(k):
        j = k + p
        out.append(row[j] if 0 <= j <= n else 0)
    return out


# -- single sum -------------------------------------------------------------


def s0_direct(k: int) -> int:
    """``sum_p C(2k, k+p) |p|`` by direct summation."""
    _check_k(k)
    return sum(w * abs(p) for p, w in zip(_offsets(k), _row_weights(2 * k, k)))


def s0_closed(k: int) -> int:
    _check_k(k)
    return k * binomial(2 * k, k)


def verify_lemma1(k: int) -> IdentityReport:
    return IdentityReport(IdentityId.LEMMA1, k, s0_direct(k), s0_closed(k))


def verify_eq1(k: int) -> IdentityReport:
    """S0 equals twice the sum over positive offsets."""
    _check_k(k)
    half = sum(p * binomial(2 * k, k + p) for p in range(1, k + PAD + 1))
    return IdentityReport(IdentityId.EQ1, k, s0_direct(k), 2 * half)


def verify_p_rewrite(k: int, p: int) -> IdentityReport:
    """Termwise ``p C(2k,k+p) = 2k C(2k-1,k+p-1) - k C(2k,k+p)``."""
    _check_k(k)
    lhs = p * binomial(2 * k, k + p)
    rhs = 2 * k * binomial(2 * k - 1, k + p - 1) - k * binomial(2 * k, k + p)
    return IdentityReport(IdentityId.P_REWRITE, k, lhs, rhs)


# -- moments ----------------------------------------------------------------


def moment(k: int, r: int) -> int:
    """Signed moment ``sum_p p**r C(2k, k+p)`` by direct summation."""
    _check_k(k)
    if r < 0:
        raise ValueError(f"moment order must be non-negative, got {r}")
    return sum(w * p**r for p, w in zip(_offsets(k), _row_weights(2 * k, k)))


def abs_moment(k: int, r: int) -> Moment:
    """``sum_p |p|**r C(2k, k+p)``; order 1 is S0."""
    _check_k(k)
    value = sum(w * abs(p) ** r for p, w in zip(_offsets(k), _row_weights(2 * k, k)))
    return Moment(k, r, value, absolute=True)


def moment_via_genfun(k: int, r: int) -> int:
    """Signed moment through ``(x d/dx)**r f(x)`` evaluated at ``x = 1``.

    No summation over offsets happens here; the value comes only from the
    Laurent-polynomial operations.
    """
    if r not in (0, 1, 2):
        raise ValueError(f"generating-function route supports r in {{0,1,2}}, got {r}")
    f = poly_binomial_power(k)
    for _ in range(r):
        f = apply_x_ddx(f)
    return eval_at_one(f)


def verify_moment2(k: int) -> IdentityReport:
    rhs = k * 2 ** (2 * k - 1) if k > 0 else 0
    return IdentityReport(IdentityId.MOMENT2, k, moment(k, 2), rhs)


def verify_odd_moments(k: int, orders: Iterable[int] = (1, 3, 5)) -> IdentityReport:
    # lhs is the sum of |m_r| so any nonzero odd moment shows up
    return IdentityReport(
        IdentityId.ODD_MOMENT, k, sum(abs(moment(k, r)) for r in orders), 0
    )


# -- double sum -------------------------------------------------------------


def s1_direct(k: int) -> int:
    """Full double sum over ``p, q``; O(k^2) big-integer products."""
    _check_k(k)
    offs = list(_offsets(k))
    w = _row_weights(2 * k, k)
    sq = [p * p for p in offs]
    total = 0
    for pp, wp in zip(sq, w):
        if wp:
            total += wp * sum(map(mul, w, [abs(pp - qq) for qq in sq]))
    return total


def s1_closed(k: int) -> int:
    _check_k(k)
    c = binomial(2 * k, k)
    return 2 * k * k * c * c


def verify_theorem1(k: int) -> IdentityReport:
    return IdentityReport(IdentityId.THEOREM1, k, s1_direct(k), s1_closed(k))


def s2_direct(k: int) -> int:
    return 2 * binomial(2 * k, k) * moment(k, 2)


def s2_closed(k: int) -> int:
    _check_k(k)
    return k * 4**k * binomial(2 * k, k)


def verify_s2_closed(k: int) -> IdentityReport:
    return IdentityReport(IdentityId.S2_CLOSED, k, s2_direct(k), s2_closed(k))


def s3_direct(k: int, check_symmetry: bool = True) -> int:
    """Eight times the sum over the octant ``p > q > 0``.

    With ``check_symmetry`` the result is compared against
    :func:`s3_direct_full` and :class:`IdentityFailure` is raised on mismatch.
    """
    _check_k(k)
    w = _row_weights(2 * k, k)
    total = 0
    for p in range(2, k + PAD + 1):
        wp = w[p + k + PAD]
        if not wp:
            continue
        for q in range(1, p):
            total += wp * w[q + k + PAD] * (p * p - q * q)
    total *= 8
    if check_symmetry and total != s3_direct_full(k):
        raise IdentityFailure(f"octant sum disagrees with the full p,q != 0 sum at k={k}")
    return total


def s3_direct_full(k: int) -> int:
    """Sum over all ``p != 0, q != 0`` with the absolute value kept."""
    _check_k(k)
    offs = list(_offsets(k))
    w = _row_weights(2 * k, k)
    total = 0
    for p, wp in zip(offs, w):
        if p == 0 or not wp:
            continue
        for q, wq in zip(offs, w):
            if q != 0:
                total += wp * wq * abs(p * p - q * q)
    return total


def s3_closed(k: int) -> int:
    """Closed form for S3 obtained from the boundary sums after telescoping."""
    _check_k(k)
    if k == 0:
        return 0
    n = 2 * k - 2
    a = binomial(n, k)
    b = binomial(n, k - 1)
    t = 2**n
    return 8 * k * (2 * k - 1) * (a * (t - b) - b * (t - 2 * a - b))


def verify_s3_closed(k: int) -> IdentityReport:
    return IdentityReport(IdentityId.S3_CLOSED, k, s3_direct(k), s3_closed(k))


def verify_decomposition_term(k: int, p: int, q: int) -> IdentityReport:
    """Signed termwise check of the ``p^2 - q^2 = (p-k)(p+k) - (q-k)(q+k)`` split."""
    _check_k(k, 1)
    n = 2 * k
    lhs = binomial(n, k + p) * binomial(n, k + q) * (p * p - q * q)
    rhs = (
        n
        * (n - 1)
        * (
            -binomial(n - 2, k + p - 1) * binomial(n, k + q)
            + binomial(n, k + p) * binomial(n - 2, k + q - 1)
        )
    )
    return IdentityReport(IdentityId.DECOMP, k, lhs, rhs)


def verify_trinomial(k: int, p: int) -> IdentityReport:
    """``C(2k,k+p) = C(2k-2,k+p) + 2 C(2k-2,k+p-1) + C(2k-2,k+p-2)``."""
    _check_k(k, 1)
    n = 2 * k - 2
    lhs = binomial(2 * k, k + p)
    rhs = binomial(n, k + p) + 2 * binomial(n, k + p - 1) + binomial(n, k + p - 2)
    return IdentityReport(IdentityId.TRINOMIAL, k, lhs, rhs)


def telescope_forms(k: int) -> dict[str, int]:
    """All intermediate expressions for ``S3 / 8`` along the telescoping argument.

    Keys:

    ``octant``      S3 / 8 from :func:`s3_direct` (divisibility checked)
    ``expanded``    ``2k(2k-1)`` times the octant sum of the decomposed terms
    ``regrouped``   the four octant double sums after cancelling the
                    ``C(2k-2,k+p-1) C(2k-2,k+q-1)`` products
    ``shifted``     the same four sums after shifting the second and third
                    to the region ``p > q >= 0``
    ``boundary``    the surviving ``q = 0`` single sums
    """
    _check_k(k, 1)
    s3 = s3_direct(k)
    octant, rem = divmod(s3, 8)
    if rem:
        raise IdentityFailure(f"S3({k}) = {s3} is not divisible by 8")

    n = 2 * k - 2
    top = k + PAD
    c = lambda j: binomial(n, j)  # noqa: E731
    C = lambda j: binomial(2 * k, j)  # noqa: E731
    pref = 2 * k * (2 * k - 1)

    def octant_sum(f, q_min: int = 1) -> int:
        return sum(f(p, q) for p in range(q_min + 1, top + 1) for q in range(q_min, p))

    expanded = pref * octant_sum(
        lambda p, q: -c(k + p - 1) * C(k + q) + C(k + p) * c(k + q - 1)
    )
    regrouped = pref * (
        octant_sum(lambda p, q: c(k + p) * c(k + q - 1))
        - octant_sum(lambda p, q: c(k + p - 1) * c(k + q - 2))
        + octant_sum(lambda p, q: c(k + p - 2) * c(k + q - 1))
        - octant_sum(lambda p, q: c(k + p - 1) * c(k + q))
    )
    shifted = pref * (
        octant_sum(lambda p, q: c(k + p) * c(k + q - 1))
        - octant_sum(lambda p, q: c(k + p) * c(k + q - 1), q_min=0)
        + octant_sum(lambda p, q: c(k + p - 1) * c(k + q), q_min=0)
        - octant_sum(lambda p, q: c(k + p - 1) * c(k + q))
    )
    boundary = pref * (
        sum(c(k + p - 1) for p in range(1, top + 1)) * c(k)
        - sum(c(k + p) for p in range(1, top + 1)) * c(k - 1)
    )
    return {
        "octant": octant,
        "expanded": expanded,
        "regrouped": regrouped,
        "shifted": shifted,
        "boundary": boundary,
    }


def verify_telescope(k: int) -> IdentityReport:
    """``S3 / 8`` against the collapsed boundary expression.

    The report is only marked equal if every intermediate form in
    :func:`telescope_forms` agrees as well; on disagreement ``rhs`` is the
    first form that differs from the octant value.
    """
    forms = telescope_forms(k)
    lhs = forms["octant"]
    rhs = forms["boundary"]
    for name in ("expanded", "regrouped", "shifted"):
        if forms[name] != lhs:
            rhs = forms[name]
            break
    return IdentityReport(IdentityId.TELESCOPE, k, lhs, rhs)


def verify_recombination(k: int) -> IdentityReport:
    """S1 (direct and closed) against ``S2 + S3`` in closed form.

    Both sides must match; the direct value is reported as ``lhs`` unless
    it agrees while the closed form does not.
    """
    _check_k(k)
    rhs = s2_closed(k) + s3_closed(k)
    lhs = s1_direct(k)
    if lhs == rhs:
        lhs = s1_closed(k)
    return IdentityReport(IdentityId.RECOMBINE, k, lhs, rhs)


# -- suite ------------------------------------------------------------------


def _first_failure(reports: Iterable[IdentityReport], ident: IdentityId, k: int) -> IdentityReport:
    """Collapse a sweep of termwise reports into one (the first failure, if any)."""
    last = None
    for rep in reports:
        if not rep.equal:
            return rep
        last = rep
    return last if last is not None else IdentityReport(ident, k, 0, 0)


def verify_all(k: int, only: Iterable[IdentityId | str] | None = None) -> list[IdentityReport]:
    """Run every verifier at ``k`` and return one report per identity.

    Termwise checks (P_REWRITE, DECOMP, TRINOMIAL) are swept over all
    ``|p|, |q| <= k + 2`` and summarised by their first failure.  Checks that
    need ``k >= 1`` are reported as trivially equal at ``k = 0``.
    """
    _check_k(k)
    wanted = None if only is None else {IdentityId(i) for i in only}
    sweep = _offsets(k)

    def run(ident: IdentityId) -> IdentityReport:
        if ident is IdentityId.LEMMA1:
            return verify_lemma1(k)
        if ident is IdentityId.THEOREM1:
            return verify_theorem1(k)
        if ident is IdentityId.EQ1:
            return verify_eq1(k)
        if ident is IdentityId.P_REWRITE:
            return _first_failure((verify_p_rewrite(k, p) for p in sweep), ident, k)
        if ident is IdentityId.S2_CLOSED:
            return verify_s2_closed(k)
        if ident is IdentityId.S3_CLOSED:
            return verify_s3_closed(k)
        if ident is IdentityId.MOMENT2:
            return verify_moment2(k)
        if ident is IdentityId.ODD_MOMENT:
            return verify_odd_moments(k)
        if ident is IdentityId.RECOMBINE:
            return verify_recombination(k)
        if k == 0:
            return IdentityReport(ident, 0, 0, 0)
        if ident is IdentityId.DECOMP:
            return _first_failure(
                (verify_decomposition_term(k, p, q) for p in sweep for q in sweep), ident, k
            )
        if ident is IdentityId.TRINOMIAL:
            return _first_failure((verify_trinomial(k, p) for p in sweep), ident, k)
        if ident is IdentityId.TELESCOPE:
            return verify_telescope(k)
        raise ValueError(ident)  # pragma: no cover

    return [run(i) for i in IdentityId if wanted is None or i in wanted]


def all_passed(reports: Iterable[IdentityReport]) -> bool:
    return all(r.equal for r in reports)
