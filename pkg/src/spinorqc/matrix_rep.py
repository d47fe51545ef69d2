"""Pauli-matrix image of Cl+(1,3) and its tensor powers.

The dictionary g_k g_0 -> sigma_k fixes the image of every even blade;
the table below is derived by hand from it (g0 gk = -gk g0, gi gj =
-(gi g0)(gj g0), I = (g1g0)(g2g0)(g3g0)) and is checked against the
geometric product in the test suite, not computed from it.

Exact matrices are numpy object arrays of ``ComplexScalar``; numeric
routines take complex128 arrays.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .algebra import STA, Multivector
from .errors import ConvergenceError, NotEvenError
from .scalar import ComplexScalar
from .tensor import as_tensor, ideal_coordinates

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


def _c(re=0, im=0):
    return ComplexScalar(re, im)


def _exact(rows):
    out = np.empty((2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            out[i, j] = rows[i][j]
    return out


_Z, _O, _I = _c(0), _c(1), _c(0, 1)
_EXACT_SIGMA = {
    0: _exact([[_O, _Z], [_Z, _O]]),
    1: _exact([[_Z, _O], [_O, _Z]]),
    2: _exact([[_Z, -_I], [_I, _Z]]),
    3: _exact([[_O, _Z], [_Z, -_O]]),
}


def _scaled(m, s):
    return np.vectorize(lambda x: x * s, otypes=[object])(m)


# even blade mask -> (complex factor, sigma index); images are factor * sigma_k
_BLADE_IMAGE = {
    0b0000: (_O, 0),   # 1
    0b0011: (-_O, 1),  # g0 g1 = -g1 g0
    0b0101: (-_O, 2),  # g0 g2
    0b1001: (-_O, 3),  # g0 g3
    0b0110: (-_I, 3),  # g1 g2 = -s1 s2 = -i s3
    0b1010: (_I, 2),   # g1 g3 = -s1 s3 = i s2
    0b1100: (-_I, 1),  # g2 g3 = -s2 s3 = -i s1
    0b1111: (_I, 0),   # I = s1 s2 s3 = i
}


def blade_image(mask: int) -> np.ndarray:
    if mask not in _BLADE_IMAGE:
        raise NotEvenError("not in even subalgebra")
    f, k = _BLADE_IMAGE[mask]
    return _scaled(_EXACT_SIGMA[k], f)


def _kron(a, b):
    return np.kron(a, b)


def exact_zero(dim: int) -> np.ndarray:
    out = np.empty((dim, dim), dtype=object)
    out.fill(ComplexScalar(0))
    return out


def rep_even(x) -> np.ndarray:
    """Image of an even (tensor) multivector.

    Exact coefficients give an object array of ``ComplexScalar``; float
    coefficients give a complex128 array.
    """
    t = as_tensor(x)
    if t.sig != STA:
        raise ValueError("the Pauli representation is defined for Cl(1,3)")
    dim = 1 << t.n
    exact = t.is_exact()
    out = exact_zero(dim) if exact else np.zeros((dim, dim), dtype=complex)
    for key, c in t.terms.items():
        block = reduce(_kron, (blade_image(m) for m in key))
        if exact:
            out = out + _scaled(block, c)
        else:
            out = out + numeric(block) * complex(c)
    return out


def numeric(m: np.ndarray) -> np.ndarray:
    """complex128 copy of an exact (or already numeric) matrix."""
    return np.vectorize(complex, otypes=[complex])(m) if m.dtype == object else np.asarray(m, dtype=complex)


def conj_transpose(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return np.vectorize(lambda z: z.conjugate(), otypes=[object])(m).T
    return m.conj().T


def rep_spinor(s) -> np.ndarray:
    """Column of a spinor in the ideal: first column of its image."""
    t = as_tensor(s)
    ideal_coordinates(t)  # raises NotInIdealError outside the ideal
    return rep_even(t)[:, 0]


def adjugate(m: np.ndarray) -> np.ndarray:
    """2x2 adjugate; the image of the Cl(1,3) reversion on one slot."""
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    out = np.empty((2, 2), dtype=m.dtype)
    out[0, 0], out[0, 1], out[1, 0], out[1, 1] = d, -b, -c, a
    return out


# -- operator norm ---------------------------------------------------------------


def operator_norm(m: np.ndarray, rtol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Largest singular value by power iteration on m^H m.

    Iteration starts from the all-ones vector and then from each standard
    basis vector; the largest converged eigenvalue wins.  A single start
    can be exactly orthogonal to the top singular vector (common for
    rational matrices), but the basis vectors cannot all be.  Each run
    stops once ||g v - lam v|| <= rtol * lam, or once lam changes by at
    most rtol relative with the residual below sqrt(rtol) * lam.
    """
    a = numeric(m)
    if a.size == 0 or not np.any(a):
        return 0.0
    g = a.conj().T @ a
    dim = g.shape[0]
    starts = [np.ones(dim, dtype=complex)] + list(np.eye(dim, dtype=complex))
    best = max(_power(g, v, rtol, max_iter) for v in starts)
    return float(np.sqrt(best))


def _power(g, v, rtol, max_iter):
    v = v / np.linalg.norm(v)
    prev = None
    for _ in range(max_iter):
        w = g @ v
        lam = float(np.real(np.vdot(v, w)))
        if not np.any(w):
            return 0.0
        res = np.linalg.norm(w - lam * v)
        # the Rayleigh quotient of a Hermitian matrix is accurate to O(res^2)
        stalled = prev is not None and abs(lam - prev) <= rtol * lam and res <= np.sqrt(rtol) * lam
        if res <= rtol * lam or stalled:
            return max(lam, 0.0)
        prev = lam
        v = w / np.linalg.norm(w)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


# -- random even operators -----------------------------------------------------

EVEN_MASKS = tuple(sorted(_BLADE_IMAGE))


def random_rational(rng: random.Random, span: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_even(rng: random.Random, density: float = 0.7) -> Multivector:
    terms = {m: random_rational(rng) for m in EVEN_MASKS if rng.random() < density}
    return Multivector(STA, terms)


# -- checks ----------------------------------------------------------------------


def _exact_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


@dataclass
class CheckRow:
    name: str
    passed: int = 0
    failed: int = 0
    detail: dict = field(default_factory=dict)
    asserted: bool = True

    def record(self, ok: bool):
        if ok:
            self.passed += 1
        else:
            self.failed += 1

    def to_dict(self):
        d = {"check": self.name, "passed": self.passed, "failed": self.failed, "asserted": self.asserted}
        d.update(self.detail)
        return d


def homomorphism_check(samples: int = 50, seed: int = 0) -> list[CheckRow]:
    rng = random.Random(seed)
    prod = CheckRow("rep(ab) == rep(a) rep(b)")
    unit = CheckRow("rep(1) == identity")
    unit.record(_exact_equal(rep_even(Multivector.scalar(STA, 1)), _EXACT_SIGMA[0]))
    for _ in range(samples):
        a, b = random_even(rng), random_even(rng)
        prod.record(_exact_equal(rep_even(a * b), rep_even(a).dot(rep_even(b))))
    return [unit, prod]


def cstar_checks(samples: int = 200, seed: int = 0, tol: float = 1e-9) -> list[CheckRow]:
    """C*-algebra axioms for even operators with O* the Hermitian adjoint.

    The adjoint is g0 ~O g0, the Cl(3,0) reversion transported to Cl+(1,3).
    The same norm identity with the bare Cl(1,3) reversion is recorded as an
    unasserted row: its image is the adjugate, so ||O ~O|| = |det O|.
    """
    rng = random.Random(seed)
    invol = CheckRow("(O*)* == O")
    anti = CheckRow("(O1 O2)* == O2* O1*")
    lin = CheckRow("(O1 + O2)* == O1* + O2*")
    cstar = CheckRow("||O O*|| == ||O||^2")
    tri = CheckRow("||O1 + O2|| <= ||O1|| + ||O2||")
    rev = CheckRow("||O ~O|| == ||O||^2 (bare reversion)", asserted=False)
    worst_cstar = worst_tri = worst_rev = 0.0
    for _ in range(samples):
        o1, o2 = random_even(rng), random_even(rng)
        invol.record(o1.adjoint().adjoint() == o1)
        anti.record((o1 * o2).adjoint() == o2.adjoint() * o1.adjoint())
        lin.record((o1 + o2).adjoint() == o1.adjoint() + o2.adjoint())
        n1 = operator_norm(rep_even(o1))
        n2 = operator_norm(rep_even(o2))
        lhs = operator_norm(rep_even(o1 * o1.adjoint()))
        err = abs(lhs - n1 * n1)
        worst_cstar = max(worst_cstar, err)
        cstar.record(err <= tol * max(1.0, n1 * n1))
        slack = operator_norm(rep_even(o1 + o2)) - (n1 + n2)
        worst_tri = max(worst_tri, slack)
        tri.record(slack <= tol)
        rerr = abs(operator_norm(rep_even(o1 * o1.reverse())) - n1 * n1)
        worst_rev = max(worst_rev, rerr)
        rev.record(rerr <= tol * max(1.0, n1 * n1))
    cstar.detail["max_error"] = worst_cstar
    tri.detail["max_slack"] = worst_tri
    rev.detail["max_error"] = worst_rev
    return [invol, anti, lin, cstar, tri, rev]
