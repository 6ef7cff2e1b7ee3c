from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sduality.scalar import GF, QQ, FieldError, Fp, field_from_descriptor, field_of

PRIMES = [2, 3, 7, 101, 32003, 2147483647]


def test_rational_parse_and_format():
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.parse(" -4 ") == -4
    assert QQ.format(Fraction(-2, 4)) == "-1/2"
    assert QQ.format(Fraction(5)) == "5"
    with pytest.raises(FieldError):
        QQ.parse("1/0")
    with pytest.raises(FieldError):
        QQ.parse("0.5")


def test_prime_field_rejects_bad_moduli():
    for bad in (1, 4, 100, 2**31 + 11):
        with pytest.raises(FieldError):
            GF(bad)
    assert GF(7).name == "fp:7"


def test_descriptors():
    assert field_from_descriptor("rational") is QQ
    assert field_from_descriptor("fp:101") == GF(101)
    assert field_from_descriptor("prime 7") == GF(7)
    with pytest.raises(FieldError):
        field_from_descriptor("reals")


def test_mixing_is_an_error():
    with pytest.raises(FieldError):
        Fp(1, 7) + Fp(1, 11)
    with pytest.raises(FieldError):
        Fp(1, 7) + Fraction(1, 2)


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        Fp(0, 7).inverse()
    with pytest.raises(ZeroDivisionError):
        Fp(3, 7) / 7


def test_parse_reduces_mod_p():
    F = GF(7)
    assert F.parse("1/2") == Fp(4, 7)
    assert F.parse("-1") == Fp(6, 7)
    assert field_of(Fp(3, 7)) == F
    assert field_of(Fraction(1, 3)) is QQ


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    x, y, z = Fp(a, p), Fp(b, p), Fp(c, p)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        # Fermat, an independent check of the inverse
        assert x ** (p - 1) == 1


@given(st.fractions(), st.fractions())
def test_rational_round_trip(a, b):
    assert QQ.parse(QQ.format(a)) == a
    assert QQ.parse(QQ.format(a * b)) == a * b
