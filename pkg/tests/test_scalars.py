from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblcomplex.scalars import I, ONE, ZERO, Scalar, as_scalar, format_scalar, parse_scalar

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
scalars = st.builds(lambda a, b: Scalar(a, b), rationals, rationals)


def _as_pair(s: Scalar) -> tuple[Fraction, Fraction]:
    return Fraction(int(s.re.numerator), int(s.re.denominator)), Fraction(int(s.im.numerator), int(s.im.denominator))


@given(scalars, scalars)
def test_multiplication_matches_pair_arithmetic(x, y):
    a, b = _as_pair(x)
    c, d = _as_pair(y)
    assert _as_pair(x * y) == (a * c - b * d, a * d + b * c)
    assert _as_pair(x + y) == (a + c, b + d)


@given(scalars)
def test_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == ONE
        assert x / x == ONE


@given(scalars)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars, scalars, scalars)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(scalars)
def test_conjugation_is_field_involution(x):
    assert x.conj().conj() == x
    assert (x * x.conj()).is_real()
    assert (x * x.conj()).re >= 0


@pytest.mark.parametrize(
    "text,re,im",
    [("0", 0, 0), ("-3/4", Fraction(-3, 4), 0), ("i", 0, 1), ("-i", 0, -1), ("1/2*i", 0, Fraction(1, 2)),
     ("2-3*i", 2, -3), ("i*5", 0, 5), (" 1 + i ", 1, 1), ("3i", 0, 3)],
)
def test_parse_literals(text, re, im):
    assert parse_scalar(text) == Scalar(re, im)


@pytest.mark.parametrize("text", ["", "1/0", "1.5", "x", "1++2", "i/2", "2**i"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_no_floats():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(1j)


def test_constants():
    assert I * I == -ONE
    assert not ZERO
    assert hash(Scalar(2, 0)) == hash(Scalar(4, 0) / 2)
