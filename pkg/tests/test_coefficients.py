from fractions import Fraction

import pytest

from gaussmoments import (
    PairExponentMatrix,
    ValidationError,
    coefficient_closed_form,
    coefficient_recursive,
    coefficient_univariate,
    enumerate_support,
)
from gaussmoments.coefficients import FactorialTable
from tests.conftest import multi_indices


def pem(n, pairs):
    return PairExponentMatrix.from_pairs(n, pairs)


def test_closed_form_examples():
    assert coefficient_closed_form((1, 1), pem(2, {(0, 1): 1})) == 1
    # 2! 2! / (2^0 2! 0! 0!)
    assert coefficient_closed_form((2, 2), pem(2, {(0, 1): 2})) == 2
    # 4! / (2^2 2! 0!)
    assert coefficient_closed_form((4,), pem(1, {(0, 0): 2})) == 3


@pytest.mark.parametrize("a", [(0,), (3,), (2, 3, 1), (1, 0, 4, 2)])
def test_all_zero_l_has_coefficient_one(a):
    assert coefficient_closed_form(a, PairExponentMatrix.zeros(len(a))) == 1


def test_univariate_examples():
    assert coefficient_univariate(4, 1) == 6
    assert coefficient_univariate(6, 3) == 15
    assert coefficient_univariate(0, 0) == 1
    with pytest.raises(ValidationError):
        coefficient_univariate(3, 2)
    with pytest.raises(ValidationError):
        coefficient_univariate(3, -1)


def test_inadmissible_rejected():
    bad = pem(2, {(0, 0): 1})
    with pytest.raises(ValidationError):
        coefficient_closed_form((1, 1), bad)
    with pytest.raises(ValidationError):
        coefficient_recursive((1, 1), bad)


def test_recursive_examples():
    assert coefficient_recursive((1, 1), pem(2, {(0, 1): 1})) == 1
    assert coefficient_recursive((2, 2), pem(2, {(0, 1): 2})) == 2
    for l in enumerate_support((2, 3, 1)):
        assert coefficient_recursive((2, 3, 1), l) == coefficient_closed_form((2, 3, 1), l)


def test_integral_positive_over_range():
    for a in multi_indices(4, 8):
        for l in enumerate_support(a):
            assert coefficient_closed_form(a, l) >= 1


@pytest.mark.parametrize("a1", range(0, 13))
def test_univariate_consistency(a1):
    for l11 in range(a1 // 2 + 1):
        assert coefficient_closed_form((a1,), pem(1, {(0, 0): l11})) == coefficient_univariate(a1, l11)


def test_perfect_pairing_terms():
    assert coefficient_closed_form((1, 1, 1, 1), pem(4, {(0, 1): 1, (2, 3): 1})) == 1
    assert coefficient_closed_form((1, 1, 1, 1), pem(4, {(0, 3): 1, (1, 2): 1})) == 1


def test_large_degree_exact():
    a = (20, 20, 20)
    l = pem(3, {(0, 1): 7, (1, 2): 5, (0, 0): 3, (2, 2): 4})
    assert coefficient_recursive(a, l) == coefficient_closed_form(a, l)
    assert coefficient_closed_form(a, l) > 2**64


def test_factorial_table_grows():
    f = FactorialTable(size=2)
    assert [f(k) for k in range(6)] == [1, 1, 2, 6, 24, 120]
    assert f(30) == 265252859812191058636308480000000
    with pytest.raises(ValidationError):
        f(-1)


def test_aggregate_identity_small():
    # all-ones inputs: sum of coefficients = E{Y^A}, Y ~ N(1, 1); E{Y^4} = 1 + 6 + 3
    total = sum(coefficient_closed_form((1, 2, 1), l) for l in enumerate_support((1, 2, 1)))
    assert Fraction(total) == 10
