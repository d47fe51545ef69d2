"""n-fold tensor products of Cl(1,3) with the slotwise (ungraded) product.

A ``TensorMultivector`` maps tuples of blade masks to coefficients.  The
product is (a1 x ... x an)(b1 x ... x bn) = (a1 b1) x ... x (an bn).
Multi-qubit states live in the left ideal [Cl+]^(x n) P^(x n); slot 1 is
the most significant bit of the computational-basis index.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType

from .algebra import (
    STA,
    Multivector,
    Signature,
    blade_display,
    blade_product,
    grade_of,
    term_text,
)
from .errors import NotInIdealError, SignatureMismatch, SlotMismatch
from .scalar import I_UNIT, INV_SQRT2, ZERO, ComplexScalar, Scalar, format_coefficient
from .spinor import BASIS, P, dual

Key = tuple[int, ...]


class TensorMultivector:
    """Sparse element of [Cl(p,q)]^(x n)."""

    __slots__ = ("_hash", "_terms", "n", "sig")

    def __init__(self, sig: Signature, n: int, terms: Mapping[Key, object] | None = None):
        if n < 1:
            raise ValueError("a tensor needs at least one slot")
        clean = {}
        for key, c in (terms or {}).items():
            if len(key) != n:
                raise SlotMismatch(f"key {key} has {len(key)} slots, expected {n}")
            if isinstance(c, (int, Fraction)):
                c = Scalar(c)
            if c != 0:
                clean[tuple(key)] = c
        self.sig = sig
        self.n = n
        self._terms = clean
        self._hash = None

    @classmethod
    def identity(cls, n: int, sig: Signature = STA) -> TensorMultivector:
        return cls(sig, n, {(0,) * n: 1})

    def identity_like(self) -> TensorMultivector:
        return TensorMultivector.identity(self.n, self.sig)

    @classmethod
    def zero(cls, n: int, sig: Signature = STA) -> TensorMultivector:
        return cls(sig, n)

    @property
    def terms(self) -> Mapping[Key, object]:
        return MappingProxyType(self._terms)

    def slot_count(self) -> int:
        return self.n

    def scalar_part(self):
        return self._terms.get((0,) * self.n, ZERO)

    def is_even(self) -> bool:
        return all(grade_of(m) % 2 == 0 for key in self._terms for m in key)

    def is_exact(self) -> bool:
        return all(isinstance(c, Scalar) for c in self._terms.values())

    def map_coefficients(self, f) -> TensorMultivector:
        return TensorMultivector(self.sig, self.n, {k: f(c) for k, c in self._terms.items()})

    def map_slots(self, f) -> TensorMultivector:
        """Apply a per-blade sign map ``f(mask) -> +-1`` in every slot."""
        out = {}
        for key, c in self._terms.items():
            s = 1
            for m in key:
                s *= f(m)
            out[key] = c if s > 0 else -c
        return TensorMultivector(self.sig, self.n, out)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: tuple((grade_of(m), m) for m in kv[0])))

    # -- ring structure ---------------------------------------------------------

    def _check(self, other: TensorMultivector):
        if other.sig != self.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")
        if other.n != self.n:
            raise SlotMismatch(f"{self.n} slots vs {other.n} slots")

    def _lift(self, other):
        if isinstance(other, TensorMultivector):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar, float)):
            return self.identity_like().scale(other)
        if isinstance(other, Multivector) and set(other.terms) <= {0}:
            return self.identity_like().scale(other.scalar_part())
        if isinstance(other, Multivector):
            raise SlotMismatch(f"cannot combine a {self.n}-slot tensor with a single multivector")
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorMultivector(self.sig, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorMultivector(self.sig, self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> TensorMultivector:
        return TensorMultivector(self.sig, self.n, {k: s * c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, float)):
            return self.scale(other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        diag = self.sig.diag
        out: dict[Key, object] = {}
        for ka, ca in self._terms.items():
            for kb, cb in o._terms.items():
                sign = 1
                key = []
                for a, b in zip(ka, kb):
                    s, m = blade_product(a, b, diag)
                    sign *= s
                    key.append(m)
                key = tuple(key)
                c = ca * cb if sign > 0 else -(ca * cb)
                out[key] = out[key] + c if key in out else c
        return TensorMultivector(self.sig, self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, float)):
            return TensorMultivector(self.sig, self.n, {k: other * c for k, c in self._terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        if isinstance(other, float):
            return self.scale(1.0 / other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(Scalar.coerce(other).inverse())
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = self.identity_like()
        for _ in range(k):
            out = out * self
        return out

    # -- involutions -------------------------------------------------------------

    def reverse(self) -> TensorMultivector:
        return self.map_slots(lambda m: -1 if (grade_of(m) * (grade_of(m) - 1) // 2) % 2 else 1)

    __invert__ = reverse

    def involute(self) -> TensorMultivector:
        return self.map_slots(lambda m: -1 if grade_of(m) % 2 else 1)

    def adjoint(self) -> TensorMultivector:
        """Slotwise Hermitian adjoint g0 ~x g0."""
        g00 = self.sig.diag[0]

        def sign(m):
            k = grade_of(m)
            rev = -1 if (k * (k - 1) // 2) % 2 else 1
            # e_m g0 = (-1)^(k - [g0 in e_m]) g0 e_m
            return rev * g00 * (-1 if (k - (m & 1)) % 2 else 1)

        return self.map_slots(sign)

    def concat(self, other) -> TensorMultivector:
        """Tensor product with further slots: (a) ox (b)."""
        o = as_tensor(other, self.sig)
        out = {}
        for ka, ca in self._terms.items():
            for kb, cb in o._terms.items():
                out[ka + kb] = ca * cb
        return TensorMultivector(self.sig, self.n + o.n, out)

    # -- comparison / text ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TensorMultivector):
            return self.sig == other.sig and self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar, float)):
            return self == self.identity_like().scale(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"TensorMultivector(n={self.n}, {self})"

    def __str__(self):
        items = []
        for key, c in self:
            words = []
            for m in key:
                c, w = blade_display(self.sig, m, c)
                words.append(w)
            first = term_text(c, words[0]) if words[0] else format_coefficient(c)
            items.append(" ox ".join([first] + [w or "1" for w in words[1:]]))
        if not items:
            return "0"
        out = items[0]
        for p in items[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def as_tensor(x, sig: Signature = STA) -> TensorMultivector:
    if isinstance(x, TensorMultivector):
        return x
    if isinstance(x, Multivector):
        return TensorMultivector(x.sig, 1, {(m,): c for m, c in x.terms.items()})
    return TensorMultivector(sig, 1, {(0,): x})


def tensor(parts: Sequence) -> TensorMultivector:
    if not parts:
        raise ValueError("tensor() needs at least one factor")
    sigs = {p.sig for p in parts if isinstance(p, (Multivector, TensorMultivector))}
    if len(sigs) > 1:
        raise SignatureMismatch("tensor factors have different signatures")
    sig = sigs.pop() if sigs else STA
    out = as_tensor(parts[0], sig)
    for p in parts[1:]:
        out = out.concat(p)
    return out


def tmul(a: TensorMultivector, b: TensorMultivector) -> TensorMultivector:
    if a.n != b.n:
        raise SlotMismatch(f"{a.n} slots vs {b.n} slots")
    return a * b


def tensor_reverse(a: TensorMultivector) -> TensorMultivector:
    return a.reverse()


def tensor_power(x, n: int) -> TensorMultivector:
    if n < 1:
        raise ValueError("n must be >= 1")
    return tensor([x] * n)


def projector(n: int) -> TensorMultivector:
    """P^(x n)."""
    return tensor_power(P, n)


def unitarity_check(a: TensorMultivector) -> bool:
    """A ~A == 1^(x n) exactly."""
    return a * a.reverse() == a.identity_like()


# -- the product-algebra parity rule -----------------------------------------


def delta_sign(I: Sequence[int], J: Sequence[int]) -> int:
    """Parity exponent for generator tuples I, J of equal length n.

    0 when all slots agree; otherwise 0 when (n even and the number of
    agreeing slots is odd) or (n odd and it is even); 1 in every other case.
    """
    if len(I) != len(J):
        raise SlotMismatch("generator tuples must have equal length")
    n = len(I)
    agree = sum(i == j for i, j in zip(I, J))
    if agree == n:
        return 0
    return _parity_clause(n, agree)


def _parity_clause(n: int, agree: int) -> int:
    if n % 2 == 0 and agree % 2 == 1:
        return 0
    if n % 2 == 1 and agree % 2 == 0:
        return 0
    return 1


@dataclass
class DeltaReport:
    n: int
    pairs_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    clause_conflicts: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pairs_checked": self.pairs_checked,
            "violations": self.violations,
            "clause_conflicts": len(self.clause_conflicts),
            "passed": self.passed,
        }


def _rho(idx: Sequence[int], sig: Signature) -> TensorMultivector:
    return TensorMultivector(sig, len(idx), {tuple(1 << i for i in idx): 1})


def delta_consistency_check(n: int, sig: Signature = STA) -> DeltaReport:
    """Check rho(e_I) rho(e_J) + (-1)^Delta rho(e_J) rho(e_I) is scalar for all I, J.

    Also records the pairs where the all-slots-agree clause and the parity
    clause would give different exponents (they only meet when I == J).
    """
    if not 1 <= n <= 3:
        raise ValueError("n must be 1, 2 or 3")
    report = DeltaReport(n)
    tuples = list(product(range(sig.n), repeat=n))
    rho = {t: _rho(t, sig) for t in tuples}
    for I in tuples:
        for J in tuples:
            d = delta_sign(I, J)
            ab = rho[I] * rho[J]
            ba = rho[J] * rho[I]
            total = ab + ba if d == 0 else ab - ba
            report.pairs_checked += 1
            if set(total.terms) - {(0,) * n}:
                report.violations.append({"I": list(I), "J": list(J), "delta": d, "value": str(total)})
            agree = sum(i == j for i, j in zip(I, J))
            if agree == n and _parity_clause(n, agree) != d:
                report.clause_conflicts.append({"I": list(I), "J": list(J)})
    return report


# -- multi-qubit states ----------------------------------------------------------


@dataclass(frozen=True)
class MultiQubitAmplitudes:
    """2^n complex amplitudes, index bits ordered slot 1 first."""

    n: int
    amps: tuple[ComplexScalar, ...]

    def __post_init__(self):
        amps = tuple(ComplexScalar.coerce(a) for a in self.amps)
        if len(amps) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} amplitudes for n={self.n}, got {len(amps)}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_reals(cls, values: Sequence) -> MultiQubitAmplitudes:
        """From (re0, im0, re1, im1, ...), the a1..a(2^(n+1)) ordering."""
        count = len(values) // 2
        n = count.bit_length() - 1
        if count < 2 or 1 << n != count or len(values) % 2:
            raise ValueError("need 2 * 2^n real values")
        return cls(n, tuple(ComplexScalar(values[2 * i], values[2 * i + 1]) for i in range(count)))

    def reals(self) -> tuple[Scalar, ...]:
        return tuple(x for a in self.amps for x in (a.re, a.im))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "amps": [[str(a.re), str(a.im)] for a in self.amps]})

    @classmethod
    def from_json(cls, text: str) -> MultiQubitAmplitudes:
        d = json.loads(text)
        amps = tuple(ComplexScalar(Scalar.parse(re), Scalar.parse(im)) for re, im in d["amps"])
        return cls(int(d["n"]), amps)


def _product_basis(J: Sequence[int]) -> TensorMultivector:
    out = as_tensor(BASIS[J[0]])
    for j in J[1:]:
        out = out.concat(BASIS[j])
    return out


_PIVOTS = tuple(min(b.terms) for b in BASIS)


def encode_state(amps: MultiQubitAmplitudes) -> TensorMultivector:
    """Encode 2^n amplitudes; the imaginary unit goes into the last slot."""
    n = amps.n
    out: dict[Key, object] = {}
    for index, a in enumerate(amps.amps):
        bits = [(index >> (n - 1 - k)) & 1 for k in range(n)]
        for imag, coeff in ((0, a.re), (1, a.im)):
            if not coeff:
                continue
            J = [2 * b for b in bits]
            J[-1] += imag
            for key, c in _product_basis(J).terms.items():
                v = coeff * c
                out[key] = out[key] + v if key in out else v
    return TensorMultivector(STA, n, out)


def ideal_coordinates(state: TensorMultivector) -> dict[tuple[int, ...], Scalar]:
    """Real coordinates on the product basis BASIS[j1] x ... x BASIS[jn].

    The slot basis elements have disjoint blade supports, so each
    coordinate is read off one pivot blade tuple; the reconstruction must
    then reproduce ``state`` exactly.
    """
    n = state.n
    coords = {}
    recon = TensorMultivector.zero(n, state.sig)
    for J in product(range(4), repeat=n):
        key = tuple(_PIVOTS[j] for j in J)
        c = state.terms.get(key)
        if c is None:
            continue
        scale = Scalar(1)
        for j in J:
            scale = scale * BASIS[j].terms[_PIVOTS[j]]
        coords[J] = c / scale if isinstance(c, Scalar) else c / float(scale)
        recon = recon + _product_basis(J).scale(coords[J])
    if recon != state:
        raise NotInIdealError("not in ideal [Cl+]^(x n) P^(x n)")
    return coords


def decode_state(state: TensorMultivector) -> MultiQubitAmplitudes:
    """Fold the real ideal coordinates into 2^n complex amplitudes.

    The ideal is a real tensor product, so I in any slot acts as i: the
    representations I x . and . x I of the same state decode equally.
    """
    n = state.n
    amps = [ComplexScalar(0)] * (1 << n)
    for J, c in ideal_coordinates(state).items():
        index = 0
        phase = ComplexScalar(1)
        for j in J:
            index = (index << 1) | (j >> 1)
            if j & 1:
                phase = phase * I_UNIT
        amps[index] = amps[index] + phase * c
    return MultiQubitAmplitudes(n, tuple(amps))


def in_ideal(state: TensorMultivector) -> bool:
    try:
        ideal_coordinates(state)
    except NotInIdealError:
        return False
    return True


def tensor_dual(state: TensorMultivector) -> TensorMultivector:
    """Slotwise bra, built from the single-slot bra on each product basis element."""
    out = TensorMultivector.zero(state.n, state.sig)
    for J, c in ideal_coordinates(state).items():
        term = as_tensor(dual(BASIS[J[0]]))
        for j in J[1:]:
            term = term.concat(dual(BASIS[j]))
        out = out + term.scale(c)
    return out


def state_inner_product(a: TensorMultivector, b: TensorMultivector):
    """``(raw, normalized)`` with raw = <(a)* b>_0 and normalized = 2^n raw."""
    from .spinor import InnerProduct

    raw = (tensor_dual(a) * b).scalar_part()
    return InnerProduct(raw, raw * (1 << a.n))


# -- Bell states and entanglement ------------------------------------------------

BELL_LABELS = ("Phi+", "Phi-", "Psi+", "Psi-")


def bell_states() -> dict[str, TensorMultivector]:
    from .spinor import G10, G30

    p2 = projector(2)
    t00 = tensor([G30, G30])
    t11 = tensor([G10, G10])
    t01 = tensor([G30, G10])
    t10 = tensor([G10, G30])
    return {
        "Phi+": (t00 + t11) * p2 * INV_SQRT2,
        "Phi-": (t00 - t11) * p2 * INV_SQRT2,
        "Psi+": (t01 + t10) * p2 * INV_SQRT2,
        "Psi-": (t01 - t10) * p2 * INV_SQRT2,
    }


def is_factorable(state: TensorMultivector) -> bool:
    """Exact rank-1 test on the 2x2 amplitude matrix of a two-slot state."""
    if state.n != 2:
        raise SlotMismatch("entanglement test is defined for two slots")
    a = decode_state(state).amps
    return a[0] * a[3] - a[1] * a[2] == 0


def amplitude_determinant(state: TensorMultivector) -> ComplexScalar:
    a = decode_state(state).amps
    return a[0] * a[3] - a[1] * a[2]
