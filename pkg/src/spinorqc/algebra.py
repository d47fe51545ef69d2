"""Single-copy Clifford algebra Cl(p,q) with exact Q[sqrt 2] coefficients.

Blades are bitmasks over generator indices (bit i set means gamma_i is a
factor), always in ascending index order.  ``STA`` is Cl(1,3) with
gamma_0^2 = +1 and gamma_k^2 = -1; ``PAULI`` is Cl(3,0).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from types import MappingProxyType

from .errors import ConvergenceError, ExpDomainError, SignatureMismatch
from .scalar import INV_SQRT2, ONE, ZERO, Scalar, format_coefficient

MAX_GENERATORS = 8


@dataclass(frozen=True)
class Signature:
    diag: tuple[int, ...]

    def __post_init__(self):
        if len(self.diag) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators supported")
        if any(d not in (1, -1) for d in self.diag):
            raise ValueError("signature entries must be +1 or -1")

    @classmethod
    def from_pq(cls, p: int, q: int) -> Signature:
        return cls((1,) * p + (-1,) * q)

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def p(self) -> int:
        return self.diag.count(1)

    @property
    def q(self) -> int:
        return self.diag.count(-1)

    @property
    def pseudoscalar_mask(self) -> int:
        return (1 << self.n) - 1

    def __str__(self):
        return f"Cl({self.p},{self.q})"


STA = Signature((1, -1, -1, -1))
PAULI = Signature((1, 1, 1))


def grade_of(mask: int) -> int:
    return mask.bit_count()


def _reorder_sign(a: int, b: int) -> int:
    # transpositions needed to merge the ascending words a and b
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


@cache
def blade_product(a: int, b: int, diag: tuple[int, ...]) -> tuple[int, int]:
    """Return ``(sign, mask)`` with e_a e_b = sign * e_mask."""
    sign = _reorder_sign(a, b)
    common = a & b
    i = 0
    while common:
        if common & 1 and diag[i] < 0:
            sign = -sign
        common >>= 1
        i += 1
    return sign, a ^ b


def _is_zero(c) -> bool:
    return c == 0


class Multivector:
    """Sparse element of Cl(p,q): a mapping blade mask -> coefficient.

    Instances are immutable.  ``*`` is the geometric product, ``~x`` the
    reversion; integers, fractions, ``Scalar`` and floats act as scalars.
    """

    __slots__ = ("_hash", "_terms", "sig")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None):
        clean = {}
        for mask, c in (terms or {}).items():
            if mask < 0 or mask >> sig.n:
                raise ValueError(f"blade {mask:b} outside {sig}")
            if isinstance(c, (int, Fraction)):
                c = Scalar(c)
            if not _is_zero(c):
                clean[mask] = c
        self.sig = sig
        self._terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def scalar(cls, sig: Signature, c=1) -> Multivector:
        return cls(sig, {0: c})

    @classmethod
    def zero(cls, sig: Signature = STA) -> Multivector:
        return cls(sig)

    @classmethod
    def blade(cls, sig: Signature, mask: int, c=1) -> Multivector:
        return cls(sig, {mask: c})

    @classmethod
    def generator(cls, sig: Signature, i: int) -> Multivector:
        if not 0 <= i < sig.n:
            raise ValueError(f"no generator g{i} in {sig}")
        return cls(sig, {1 << i: 1})

    # -- access --------------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int):
        return self._terms.get(mask, ZERO)

    def scalar_part(self):
        return self._terms.get(0, ZERO)

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self._terms}

    def is_even(self) -> bool:
        return all(grade_of(m) % 2 == 0 for m in self._terms)

    def is_exact(self) -> bool:
        return all(isinstance(c, Scalar) for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (grade_of(kv[0]), kv[0])))

    # -- linear structure ---------------------------------------------------

    def _check(self, other: Multivector):
        if other.sig != self.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def _lift(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar, float)):
            return Multivector.scalar(self.sig, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out[m] + c if m in out else c
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> Multivector:
        return Multivector(self.sig, {m: s * c for m, c in self._terms.items()})

    # -- products ------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, float)):
            return self.scale(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        diag = self.sig.diag
        out: dict[int, object] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                s, m = blade_product(ma, mb, diag)
                c = ca * cb if s > 0 else -(ca * cb)
                out[m] = out[m] + c if m in out else c
        return Multivector(self.sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, float)):
            return Multivector(self.sig, {m: other * c for m, c in self._terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar, float)):
            inv = Scalar.coerce(other).inverse() if not isinstance(other, float) else 1.0 / other
            return self.scale(inv)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = Multivector.scalar(self.sig, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- involutions -----------------------------------------------------------

    def grade(self, k: int) -> Multivector:
        return Multivector(self.sig, {m: c for m, c in self._terms.items() if grade_of(m) == k})

    def even_part(self) -> Multivector:
        return Multivector(self.sig, {m: c for m, c in self._terms.items() if grade_of(m) % 2 == 0})

    def reverse(self) -> Multivector:
        out = {}
        for m, c in self._terms.items():
            k = grade_of(m)
            out[m] = -c if (k * (k - 1) // 2) % 2 else c
        return Multivector(self.sig, out)

    __invert__ = reverse

    def involute(self) -> Multivector:
        return Multivector(self.sig, {m: (-c if grade_of(m) % 2 else c) for m, c in self._terms.items()})

    def adjoint(self) -> Multivector:
        """Hermitian adjoint ``g0 ~x g0``.

        On the even subalgebra of Cl(1,3) this is the reversion of Cl(3,0)
        carried over by g_k g_0 <-> sigma_k, i.e. the conjugate transpose
        in the Pauli representation.
        """
        g0 = Multivector.generator(self.sig, 0)
        return g0 * self.reverse() * g0

    def norm_squared(self):
        return (self.reverse() * self).scalar_part()

    # -- comparison / text ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar, float)):
            return self == Multivector.scalar(self.sig, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Multivector({self.sig}, {self})"

    def __str__(self):
        return format_terms([blade_display(self.sig, m, c) for m, c in self])


# -- canonical text ------------------------------------------------------------


def blade_word(sig: Signature, mask: int) -> tuple[int, str]:
    """Display word for a blade and the sign relating it to canonical order.

    Grade-2 blades containing g0 print as ``gk*g0`` (= -g0*gk), matching the
    g_k g_0 notation of the even subalgebra; the Cl(1,3) pseudoscalar prints
    as ``I``.  Everything else prints in ascending order.
    """
    if mask == 0:
        return 1, ""
    if sig == STA and mask == sig.pseudoscalar_mask:
        return 1, "I"
    idx = [i for i in range(sig.n) if mask >> i & 1]
    if len(idx) == 2 and idx[0] == 0:
        return -1, f"g{idx[1]}*g0"
    return 1, "*".join(f"g{i}" for i in idx)


def blade_display(sig: Signature, mask: int, c) -> tuple[object, str]:
    s, word = blade_word(sig, mask)
    return (c if s > 0 else -c), word


def term_text(c, word: str) -> str:
    if not word:
        return format_coefficient(c)
    if c == 1:
        return word
    if c == -1:
        return "-" + word
    return f"{format_coefficient(c)}*{word}"


def format_terms(items: Iterable[tuple[object, str]]) -> str:
    parts = [term_text(c, w) for c, w in items]
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# -- free-function API ---------------------------------------------------------


def gamma(*indices: int, sig: Signature = STA) -> Multivector:
    """Ordered product of generators, e.g. ``gamma(3, 0)`` is g3 g0."""
    out = Multivector.scalar(sig, 1)
    for i in indices:
        out = out * Multivector.generator(sig, i)
    return out


def pseudoscalar(sig: Signature = STA) -> Multivector:
    return Multivector.blade(sig, sig.pseudoscalar_mask)


def gp(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def add(a: Multivector, b: Multivector) -> Multivector:
    return a + b


def scale(s, a: Multivector) -> Multivector:
    return a.scale(s)


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.n:
        raise ValueError(f"grade {k} outside 0..{a.sig.n}")
    return a.grade(k)


def reverse(a):
    return a.reverse()


def grade_involution(a):
    return a.involute()


def norm_squared(a: Multivector):
    return a.norm_squared()


def is_even(a) -> bool:
    return a.is_even()


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def spin_membership(a: Multivector) -> str:
    """Classify as ``spin_plus`` (N=1), ``spin`` (N=-1) or ``neither``."""
    if not a.is_even():
        return "neither"
    n = a.norm_squared()
    if n == 1:
        return "spin_plus"
    if n == -1:
        return "spin"
    return "neither"


# cos and sin of k*pi/4, k = 0..7
_COS = (ONE, INV_SQRT2, ZERO, -INV_SQRT2, -ONE, -INV_SQRT2, ZERO, INV_SQRT2)
_SIN = (ZERO, INV_SQRT2, ONE, INV_SQRT2, ZERO, -INV_SQRT2, -ONE, -INV_SQRT2)


def quarter_turn(k: int) -> tuple[Scalar, Scalar]:
    """Exact ``(cos, sin)`` of ``k * pi/4``."""
    return _COS[k % 8], _SIN[k % 8]


def exp_bivector(theta_quarter_pi: int, B):
    """``exp(k*pi/4 * B)`` in closed form for B with B*B = -1 exactly.

    Works for anything with a ring structure and ``one_like``: single
    multivectors and tensor multivectors alike.
    """
    one = one_like(B)
    if B * B != -one:
        raise ExpDomainError("not a unit negative-square bivector")
    c, s = quarter_turn(theta_quarter_pi)
    return one * c + B * s


def one_like(x):
    if isinstance(x, Multivector):
        return Multivector.scalar(x.sig, 1)
    return x.identity_like()


def _max_abs(x) -> float:
    return max((abs(complex(c)) for c in x.terms.values()), default=0.0)


def to_float(x):
    """Copy of ``x`` with float coefficients."""
    if isinstance(x, Multivector):
        return Multivector(x.sig, {m: float(c) for m, c in x.terms.items()})
    return x.map_coefficients(float)


def exp_series(M, theta: float = 1.0, rtol: float = 1e-12, max_terms: int = 64):
    """Float-mode ``exp(theta * M)`` by truncated power series."""
    X = to_float(M) * float(theta)
    term = to_float(one_like(M))
    total = term
    for n in range(1, max_terms + 1):
        term = (term * X) * (1.0 / n)
        total = total + term
        size = _max_abs(total)
        if _max_abs(term) <= rtol * max(size, 1e-300):
            return total
    raise ConvergenceError(f"exp series did not converge in {max_terms} terms")
