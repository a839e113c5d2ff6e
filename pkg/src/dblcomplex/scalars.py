"""Gaussian rationals a + b*i with a, b in Q.

Rationals are gmpy2 ``mpq`` values, which keep numerator and denominator
coprime with a positive denominator after every operation.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "I", "parse_scalar", "as_scalar", "Rational"]

Rational = type(mpq(0))

_Q0 = mpq(0)
_Q1 = mpq(1)


def _q(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


class Scalar:
    """Element of Q(i). Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _make(cls, re: Rational, im: Rational) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    def conj(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.re, -self.im)

    def __add__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return Scalar._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return Scalar._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return Scalar._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other) -> "Scalar":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if b == 0 and d == 0:
                return Scalar._make(a * c, _Q0)
            return Scalar._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return Scalar._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if b == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return Scalar._make(1 / a, _Q0)
        n = a * a + b * b
        return Scalar._make(a / n, -b / n)

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar._make(self.re / other, self.im / other)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) * self.inverse()

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar._make(_Q0, _Q0)
ONE = Scalar._make(_Q1, _Q0)
I = Scalar._make(_Q0, _Q1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact scalars")
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars")
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar._make(mpq(x), _Q0)


def _fmt_q(q: Rational) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    re_, im_ = s.re, s.im
    if im_ == 0:
        return _fmt_q(re_)
    if abs(im_) == 1:
        ipart = "i"
    else:
        ipart = _fmt_q(abs(im_)) + "*i"
    if re_ == 0:
        return ipart if im_ > 0 else "-" + ipart
    return _fmt_q(re_) + ("+" if im_ > 0 else "-") + ipart


_TERM = re.compile(
    r"""^(?P<sign>[+-]?)
        (?:
          (?P<rat>\d+(?:/\d+)?)(?P<imag>\*?i)?
        | i(?:\*(?P<rat2>\d+(?:/\d+)?))?
        )$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b``, ``a/b+c/d*i``, ``c/d*i``, ``i``, ``-i``; whitespace ignored."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty scalar literal")
    # split into signed terms at '+'/'-' that do not start the string
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"malformed scalar literal {text!r}")
    re_, im_ = _Q0, _Q0
    for t in terms:
        m = _TERM.match(t)
        if m is None:
            raise ValueError(f"malformed scalar literal {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("rat") is not None:
            try:
                val = mpq(m.group("rat"))
            except ZeroDivisionError:
                raise ValueError(f"zero denominator in {text!r}") from None
            if m.group("imag"):
                im_ += sign * val
            else:
                re_ += sign * val
        else:
            try:
                val = mpq(m.group("rat2")) if m.group("rat2") else _Q1
            except ZeroDivisionError:
                raise ValueError(f"zero denominator in {text!r}") from None
            im_ += sign * val
    return Scalar._make(re_, im_)
