"""Single-qubit algebraic spinors in the minimal left ideal Cl+(1,3) P.

The qubit dictionary::

    |0>  <->  g3 g0 P        i|0>  <->  I g3 g0 P
    |1>  <->  g1 g0 P        i|1>  <->  I g1 g0 P

with P = (1 + g3 g0)/2.  A state (a1 + i a2)|0> + (a3 + i a4)|1> is the
ideal element (a1 g3g0 + a2 I g3g0 + a3 g1g0 + a4 I g1g0) P.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .algebra import STA, Multivector, gamma, pseudoscalar
from .errors import NotInIdealError
from .scalar import HALF, ZERO, ComplexScalar, Scalar

IOTA = pseudoscalar(STA)
G30 = gamma(3, 0)
G10 = gamma(1, 0)
ONE = Multivector.scalar(STA, 1)
P = (ONE + G30) * HALF

# left factors of the four ideal basis elements, in amplitude order a1..a4
BASIS_FACTORS = (G30, IOTA * G30, G10, IOTA * G10)
BASIS = tuple(f * P for f in BASIS_FACTORS)


@dataclass(frozen=True)
class Idempotent:
    value: Multivector

    def is_idempotent(self) -> bool:
        return bool(self.value) and self.value * self.value == self.value

    def left_ideal_dimension(self) -> int:
        """Real dimension of Cl+ * value, by exact elimination."""
        even_blades = [m for m in range(1 << STA.n) if m.bit_count() % 2 == 0]
        span = [(Multivector.blade(STA, m) * self.value).terms for m in even_blades]
        return linalg.rank(span)


def idempotent_p() -> Idempotent:
    return Idempotent(P)


@dataclass(frozen=True)
class QubitAmplitudes:
    a1: Scalar
    a2: Scalar
    a3: Scalar
    a4: Scalar

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name)))

    @classmethod
    def of(cls, *values) -> QubitAmplitudes:
        return cls(*values)

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a1, self.a2, self.a3, self.a4)

    def complex_pair(self) -> tuple[ComplexScalar, ComplexScalar]:
        return ComplexScalar(self.a1, self.a2), ComplexScalar(self.a3, self.a4)

    def norm_squared(self) -> Scalar:
        return sum((a * a for a in self.as_tuple()), ZERO)

    def to_json(self) -> str:
        return json.dumps({f"a{i + 1}": str(a) for i, a in enumerate(self.as_tuple())})

    @classmethod
    def from_json(cls, text: str) -> QubitAmplitudes:
        d = json.loads(text)
        return cls(*(Scalar.parse(str(d[f"a{i}"])) for i in range(1, 5)))


def encode_qubit(q: QubitAmplitudes) -> Multivector:
    out = Multivector.zero(STA)
    for a, b in zip(q.as_tuple(), BASIS):
        out = out + b * a
    return out


def decode_qubit(s: Multivector) -> QubitAmplitudes:
    x = linalg.solve([b.terms for b in BASIS], s.terms)
    if x is None:
        raise NotInIdealError(f"not in ideal Cl+P: {s}")
    return QubitAmplitudes(*x)


def in_ideal(s: Multivector) -> bool:
    return s.is_even() and s * P == s


def dual(s: Multivector) -> Multivector:
    """Bra of ``s``: P (a1 g3g0 - a2 I g3g0 + a3 g1g0 - a4 I g1g0)."""
    a1, a2, a3, a4 = decode_qubit(s).as_tuple()
    f1, f2, f3, f4 = BASIS_FACTORS
    return P * (f1 * a1 - f2 * a2 + f3 * a3 - f4 * a4)


class InnerProduct(NamedTuple):
    raw: Scalar
    normalized: Scalar


def inner_product(a: Multivector, b: Multivector) -> InnerProduct:
    """``<(a)* b>_0`` and the Hilbert-normalized value ``2 <(a)* b>_0``.

    The raw value is half the real part of the Hilbert-space product.
    """
    raw = (dual(a) * b).scalar_part()
    return InnerProduct(raw, raw * 2)


def left_iota(s: Multivector) -> Multivector:
    return IOTA * s


def right_iota(s: Multivector) -> Multivector:
    return s * IOTA


KET0 = encode_qubit(QubitAmplitudes(1, 0, 0, 0))
KET1 = encode_qubit(QubitAmplitudes(0, 0, 1, 0))


def amplitudes(*values) -> QubitAmplitudes:
    """Shorthand accepting ints, fractions, Scalars or strings like '3/5'."""
    return QubitAmplitudes(*(Scalar.parse(v) if isinstance(v, str) else v for v in values))
