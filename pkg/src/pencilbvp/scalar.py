"""Exact scalars: rationals and Gaussian rationals.

Real values are plain :class:`fractions.Fraction` objects.  Values with a
nonzero imaginary part are :class:`GaussianRational`; every arithmetic
result whose imaginary part vanishes collapses back to a ``Fraction``, so a
computation that never touches ``i`` never pays for complex arithmetic.

Both types expose ``.real``, ``.imag`` and ``.conjugate()``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import ParseError

__all__ = [
    "GaussianRational",
    "Scalar",
    "I",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
    "is_real",
]


class GaussianRational:
    """A complex number ``real + imag*i`` with rational parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", Fraction(real))
        object.__setattr__(self, "imag", Fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.real, x.imag
        if isinstance(x, (int, Fraction)):
            return x, 0
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return _make(self.real + o[0], self.imag + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return _make(self.real - o[0], self.imag - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return _make(o[0] - self.real, o[1] - self.imag)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        a, b = self.real, self.imag
        c, d = o
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by zero")
        a, b = self.real, self.imag
        return _make(Fraction(a * c + b * d) / den, Fraction(b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def __abs__(self):
        raise TypeError("|z| of a Gaussian rational is not rational; use abs2()")

    def abs2(self):
        return self.real * self.real + self.imag * self.imag

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self.real == o[0] and self.imag == o[1]

    def __hash__(self):
        if not self.imag:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real!s}, {self.imag!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


def _make(re_part, im_part):
    if im_part:
        return GaussianRational(re_part, im_part)
    return re_part if type(re_part) is Fraction else Fraction(re_part)


def as_scalar(x) -> Scalar:
    """Coerce ``x`` to an exact scalar; floats and builtin complex are refused."""
    t = type(x)
    if t is Fraction:
        return x
    if t is int:
        return Fraction(x)
    if t is GaussianRational:
        return x if x.imag else x.real
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot use {t.__name__} {x!r} as an exact scalar")


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational) or not x.imag


def abs2(x) -> Fraction:
    """Squared modulus, always rational."""
    if isinstance(x, GaussianRational):
        return x.abs2()
    return Fraction(x * x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^\s*({_RAT})\s*$")
_IMAG_RE = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*i\s*$")
_COMPLEX_RE = re.compile(
    rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*i\s*$"
)


def _rat(text):
    value = Fraction(text)
    return value


def parse_scalar(text: str) -> Scalar:
    """Parse ``"3"``, ``"-1/2"``, ``"1/2+3/4i"``, ``"1/2 - 3/4 i"`` or ``"-i"``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a scalar string, got {type(text).__name__}")
    try:
        m = _REAL_RE.match(text)
        if m:
            return _rat(m.group(1))
        m = _COMPLEX_RE.match(text)
        if m:
            im = _rat(m.group(3) or "1")
            if m.group(2) == "-":
                im = -im
            return _make(_rat(m.group(1)), im)
        m = _IMAG_RE.match(text)
        if m:
            im = _rat(m.group(2) or "1")
            if m.group(1) == "-":
                im = -im
            return _make(Fraction(0), im)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in scalar {text!r}") from None
    raise ParseError(f"malformed scalar {text!r}")


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Exact lowest-terms text; the sign sits on the numerator only."""
    if isinstance(x, GaussianRational) and x.imag:
        re_part, im_part = x.real, x.imag
        sign = "-" if im_part < 0 else "+"
        mag = abs(im_part)
        im_txt = "" if mag == 1 else _format_rational(mag)
        if not re_part:
            return f"{'-' if sign == '-' else ''}{im_txt}i"
        return f"{_format_rational(re_part)}{sign}{im_txt}i"
    if isinstance(x, GaussianRational):
        x = x.real
    return _format_rational(Fraction(x))
