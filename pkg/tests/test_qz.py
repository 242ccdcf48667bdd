from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tycat.qz import QZ, parse_qz

fracs = st.fractions(max_denominator=64)


def test_reduction_mod_one():
    assert QZ(5, 4) == QZ(1, 4)
    assert QZ(-1, 4) == QZ(3, 4)
    assert str(QZ(3, 4)) == "3/4"
    assert QZ(2, 2) == 0


def test_parse():
    assert parse_qz("1/2") == QZ(1, 2)
    assert QZ("3/4") == QZ(3, 4)


def test_order():
    assert QZ(1, 4).order() == 4
    assert QZ(0).order() == 1
    assert QZ(2, 6).order() == 3


@given(fracs, fracs)
def test_addition_commutes(a, b):
    assert QZ(a) + QZ(b) == QZ(b) + QZ(a)


@given(fracs)
def test_negation_inverse(a):
    assert QZ(a) + (-QZ(a)) == 0


@given(fracs, st.integers(-20, 20))
def test_scalar_multiple_is_repeated_sum(a, k):
    total = QZ(0)
    for _ in range(abs(k)):
        total = total + QZ(a)
    if k < 0:
        total = -total
    assert QZ(a) * k == total


@given(fracs)
def test_hash_consistent(a):
    assert hash(QZ(a)) == hash(QZ(a + 1))
