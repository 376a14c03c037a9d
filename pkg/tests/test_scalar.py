from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bflab.errors import ConfigError, DivisionByZero
from bflab.scalar import PrimeField, Rationals, is_prime, ring_from_text

Q = Rationals()
F2 = PrimeField(2)
F5 = PrimeField(5)


def test_prime_field_products():
    assert F5.mul(3, 4) == 2
    assert F2.inv(1) == 1
    assert F5.inv(2) == 3
    assert F5.mul(2, F5.inv(2)) == 1


def test_rational_canonical_form():
    half = Q.parse("2/4")
    assert half == Fraction(1, 2)
    assert Q.format(half) == "1/2"
    # denominators normalize positive
    assert Q.format(Q.coerce(Fraction(3, -6))) == "-1/2"
    assert Q.coerce(Fraction(3, -6)).denominator == 2


def test_inversion_of_zero_raises():
    with pytest.raises(DivisionByZero):
        Q.inv(Q.zero)
    with pytest.raises(DivisionByZero):
        F5.inv(0)


def test_prime_modulus_checked():
    with pytest.raises(ConfigError):
        PrimeField(4)
    with pytest.raises(ConfigError):
        PrimeField(1)
    for p in (2, 3, 5, 7, 97):
        assert PrimeField(p).p == p
    assert is_prime(2) and is_prime(13) and not is_prime(15)


def test_ring_from_text():
    assert ring_from_text("Q") == Q
    assert ring_from_text("Fp:5") == F5
    assert ring_from_text("F5") == F5
    with pytest.raises(ConfigError):
        ring_from_text("Z6")


def test_scalar_text_forms():
    assert F5.format(7) == "2 mod 5"
    assert F5.parse("3 mod 5") == 3
    assert F5.parse("8") == 3
    with pytest.raises(ConfigError):
        F5.parse("3 mod 7")
    with pytest.raises(ConfigError):
        Q.parse("x")


rationals = st.fractions(max_denominator=50)
residues = st.integers(min_value=0, max_value=4)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert Q.add(a, b) == Q.add(b, a)
    assert Q.mul(a, b) == Q.mul(b, a)
    assert Q.mul(Q.add(a, b), c) == Q.add(Q.mul(a, c), Q.mul(b, c))
    assert Q.add(Q.add(a, b), c) == Q.add(a, Q.add(b, c))
    assert Q.mul(Q.mul(a, b), c) == Q.mul(a, Q.mul(b, c))
    if a != 0:
        assert Q.mul(a, Q.inv(a)) == Q.one


@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    assert F5.add(a, b) == F5.add(b, a)
    assert F5.mul(a, b) == F5.mul(b, a)
    assert F5.mul(F5.add(a, b), c) == F5.add(F5.mul(a, c), F5.mul(b, c))
    assert F5.add(F5.add(a, b), c) == F5.add(a, F5.add(b, c))
    assert F5.mul(F5.mul(a, b), c) == F5.mul(a, F5.mul(b, c))
    assert F5.sub(a, b) == F5.add(a, F5.neg(b))
    if a % 5:
        assert F5.mul(a, F5.inv(a)) == F5.one
