import math

import pytest
from hypothesis import given, strategies as st

from absum.exact_core import (
    LaurentPoly,
    apply_x_ddx,
    binomial,
    eval_at_one,
    pascal_row,
    poly_binomial_power,
)


def additive_row(n):
    """Pascal row built only by the additive recurrence (independent of the code under test)."""
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


@pytest.mark.parametrize(
    "n, k, expected",
    [(4, 2, 6), (5, -1, 0), (0, 0, 1), (5, 6, 0), (-3, 1, 0), (-1, -1, 0), (10, 10, 1)],
)
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_against_additive_rows():
    for n in range(40):
        row = additive_row(n)
        for k in range(-3, n + 4):
            assert binomial(n, k) == (row[k] if 0 <= k <= n else 0)


def test_binomial_multiplicative_agrees_with_row_path_large():
    for n in (100, 257, 1000, 2001):
        assert pascal_row(n) == [binomial(n, k) for k in range(n + 1)]
        assert pascal_row(n) == [math.comb(n, k) for k in range(n + 1)]


@pytest.mark.parametrize("n, row", [(0, [1]), (2, [1, 2, 1]), (4, [1, 4, 6, 4, 1])])
def test_pascal_row_examples(n, row):
    assert pascal_row(n) == row


def test_pascal_row_rejects_negative():
    with pytest.raises(ValueError):
        pascal_row(-1)


@given(st.integers(0, 300))
def test_pascal_row_sum_and_palindrome(n):
    row = pascal_row(n)
    assert sum(row) == 2**n
    assert row == row[::-1]


@given(st.integers(0, 200), st.integers(-10, 210))
def test_binomial_symmetry(n, k):
    assert binomial(n, k) == binomial(n, n - k)


@given(st.integers(1, 200), st.integers(-10, 210))
def test_binomial_additive_recurrence(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_no_overflow_at_large_k():
    c = binomial(4000, 2000)
    assert c.bit_length() > 3990
    assert c == math.comb(4000, 2000)


# -- Laurent polynomials ----------------------------------------------------


def genfun_by_multiplication(k):
    """x**-k (1 + x)**2k by repeated multiplication; the oracle for poly_binomial_power."""
    f = LaurentPoly({-k: 1})
    one_plus_x = LaurentPoly({0: 1, 1: 1})
    for _ in range(2 * k):
        f = f * one_plus_x
    return f


@pytest.mark.parametrize(
    "k, expected",
    [
        (0, {0: 1}),
        (1, {-1: 1, 0: 2, 1: 1}),
        (2, {-2: 1, -1: 4, 0: 6, 1: 4, 2: 1}),
    ],
)
def test_poly_binomial_power_examples(k, expected):
    assert poly_binomial_power(k) == LaurentPoly(expected)


@pytest.mark.parametrize("k", range(0, 25))
def test_poly_binomial_power_matches_multiplication_oracle(k):
    f = poly_binomial_power(k)
    assert f == genfun_by_multiplication(k)
    assert f == LaurentPoly({-k: 1}) * LaurentPoly({0: 1, 1: 1}) ** (2 * k)
    assert f.support() == (-k, k)
    for p in range(-k - 2, k + 3):
        assert f.coeff(p) == binomial(2 * k, k + p)


def test_apply_x_ddx_examples():
    assert apply_x_ddx(LaurentPoly({0: 5})).is_zero()
    g = LaurentPoly({-1: 1, 0: 2, 1: 1})
    assert apply_x_ddx(g) == LaurentPoly({-1: -1, 1: 1})
    assert apply_x_ddx(apply_x_ddx(g)) == LaurentPoly({-1: 1, 1: 1})


def test_eval_at_one_examples():
    assert eval_at_one(LaurentPoly()) == 0
    assert eval_at_one(LaurentPoly({-1: 1, 0: 2, 1: 1})) == 4
    assert eval_at_one(LaurentPoly({-1: 1, 1: 1})) == 2


def test_zero_coefficients_not_stored():
    f = LaurentPoly({3: 0, -2: 5, 1: 1}) + LaurentPoly({1: -1})
    assert f.coeffs == {-2: 5}
    assert LaurentPoly({0: 0}).coeffs == {}
    assert LaurentPoly().support() is None


laurent = st.dictionaries(st.integers(-8, 8), st.integers(-50, 50), max_size=8).map(LaurentPoly)


@given(laurent)
def test_eval_of_derivative_is_first_moment(f):
    assert eval_at_one(apply_x_ddx(f)) == sum(e * c for e, c in f.coeffs.items())


@given(laurent, laurent, laurent)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == LaurentPoly()


@given(laurent, laurent)
def test_eval_is_multiplicative(f, g):
    assert eval_at_one(f * g) == eval_at_one(f) * eval_at_one(g)
