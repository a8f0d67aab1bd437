from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siltglue.fields import QQ, PrimeField, field_from_tag


def test_rational_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    assert QQ.is_zero(Fraction(0))
    assert QQ.of("3/4") == Fraction(3, 4)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_prime_field_basics():
    F = PrimeField(5)
    assert F.add(3, 4) == 2
    assert F.mul(F.inv(3), 3) == 1
    assert F.of(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5
    with pytest.raises(ValueError):
        PrimeField(6)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_fp_matches_integers(a, b):
    F = PrimeField(7)
    assert F.add(F.of(a), F.of(b)) == (a + b) % 7
    assert F.mul(F.of(a), F.of(b)) == (a * b) % 7


def test_field_from_tag():
    assert field_from_tag("Q") == QQ
    assert field_from_tag("Fp:11") == PrimeField(11)
    with pytest.raises(ValueError):
        field_from_tag("R")


def test_equality_and_hash():
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert QQ != PrimeField(5)
    assert len({QQ, PrimeField(5), PrimeField(5)}) == 2
