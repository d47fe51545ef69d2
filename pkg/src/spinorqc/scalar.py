"""Exact coefficients in Q[sqrt 2] and exact complex numbers over it.

Every identity the kernel checks involves at most a factor 1/sqrt(2), so
``Scalar`` keeps a rational part and a rational multiple of sqrt(2) and
decides equality exactly.  Mixing a ``Scalar`` with a Python float demotes
the result to float; this is how float mode flows through the same code.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union["Scalar", int, Fraction, float, complex]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """An element ``rat + irr*sqrt(2)`` with rational ``rat`` and ``irr``."""

    __slots__ = ("irr", "rat")

    def __init__(self, rat=0, irr=0):
        object.__setattr__(self, "rat", _frac(rat))
        object.__setattr__(self, "irr", _frac(irr))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        return cls(x)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.rat + other.rat, self.irr + other.irr)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.rat + other, self.irr)
        if isinstance(other, (float, complex)):
            return float(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.rat, -self.irr)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Scalar, int, Fraction, float, complex)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.rat, self.irr, other.rat, other.irr
            return Scalar(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.rat * other, self.irr * other)
        if isinstance(other, (float, complex)):
            return float(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def conjugate_root(self) -> Scalar:
        """Galois conjugate ``rat - irr*sqrt(2)``."""
        return Scalar(self.rat, -self.irr)

    def field_norm(self) -> Fraction:
        return self.rat * self.rat - 2 * self.irr * self.irr

    def inverse(self) -> Scalar:
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self.rat / n, -self.irr / n)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.rat / other, self.irr / other)
        if isinstance(other, (float, complex)):
            return float(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other) * self.inverse()
        if isinstance(other, (float, complex)):
            return other / float(self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of ``rat + irr*sqrt(2)``."""
        sa = (self.rat > 0) - (self.rat < 0)
        sb = (self.irr > 0) - (self.irr < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare rat^2 with 2*irr^2
        d = self.rat * self.rat - 2 * self.irr * self.irr
        return sa if d > 0 else sb

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.rat == other.rat and self.irr == other.irr
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def __lt__(self, other):
        return (self - Scalar.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - Scalar.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Scalar.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - Scalar.coerce(other)).sign() >= 0

    def __bool__(self):
        return self.rat != 0 or self.irr != 0

    def __float__(self):
        return float(self.rat) + float(self.irr) * math.sqrt(2.0)

    def __complex__(self):
        return complex(float(self))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- text --------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({str(self.rat)!r}, {str(self.irr)!r})"

    def __str__(self):
        return format_coefficient(self)

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Read the coefficient text produced by :func:`format_coefficient`.

        Accepts ``p/q``, ``rt2``, ``p/q*rt2`` and ``(p/q + r/s*rt2)``.
        """
        m = _SCALAR_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"not a Q[sqrt2] literal: {text!r}")
        body = m.group("body") if m.group("body") is not None else text.strip()
        total = cls()
        for sign, part in _TERM_RE.findall(body.replace(" ", "")):
            s = -1 if sign == "-" else 1
            if part.endswith("rt2"):
                head = part[: -len("rt2")].rstrip("*")
                total = total + Scalar(0, s * (Fraction(head) if head else 1))
            else:
                total = total + Scalar(s * Fraction(part))
        return total


_NUM = r"\d+(?:/\d+)?"
_PART = rf"(?:{_NUM}\*?rt2|rt2|{_NUM})"
_SCALAR_RE = re.compile(
    rf"\(\s*(?P<body>[-+]?\s*{_PART}(?:\s*[-+]\s*{_PART})*)\s*\)|[-+]?{_PART}"
)
_TERM_RE = re.compile(rf"([-+]?)({_PART})")

ZERO = Scalar(0)
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))
INV_SQRT2 = Scalar(0, Fraction(1, 2))


def _irr_text(b: Fraction) -> str:
    if b == 1:
        return "rt2"
    if b == -1:
        return "-rt2"
    return f"{b}*rt2"


def format_coefficient(c) -> str:
    """Canonical text for a coefficient: ``1/2``, ``1/2*rt2``, ``(1 - rt2)``."""
    if isinstance(c, (int, Fraction)):
        return str(Fraction(c))
    if isinstance(c, float):
        return repr(c)
    if isinstance(c, complex):
        return repr(c)
    if c.irr == 0:
        return str(c.rat)
    if c.rat == 0:
        return _irr_text(c.irr)
    irr = _irr_text(abs(c.irr))
    op = "-" if c.irr < 0 else "+"
    return f"({c.rat} {op} {irr})"


def is_exact(c) -> bool:
    return isinstance(c, (Scalar, int, Fraction))


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class ComplexScalar:
    """Exact complex number ``re + i*im`` with ``re, im`` in Q[sqrt 2]."""

    __slots__ = ("im", "re")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Scalar.coerce(re))
        object.__setattr__(self, "im", Scalar.coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexScalar is immutable")

    @classmethod
    def coerce(cls, x) -> ComplexScalar:
        if isinstance(x, ComplexScalar):
            return x
        return cls(x)

    def __add__(self, other):
        o = _as_complex_scalar(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        o = _as_complex_scalar(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _as_complex_scalar(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> ComplexScalar:
        return ComplexScalar(self.re, -self.im)

    def __eq__(self, other):
        o = _as_complex_scalar(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexScalar({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"{self.re} + {self.im}*i"


def _as_complex_scalar(x):
    if isinstance(x, ComplexScalar):
        return x
    if isinstance(x, (Scalar, int, Fraction)):
        return ComplexScalar(x)
    return None


I_UNIT = ComplexScalar(0, 1)
