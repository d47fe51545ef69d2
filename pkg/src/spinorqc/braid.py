"""Braid generators in Cl+(1,3), their tensor powers, Bell-state actions and
the algebraic teleportation identity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, NamedTuple

from .algebra import STA, Multivector, exp_bivector, gamma, spin_membership
from .scalar import HALF, INV_SQRT2
from .spinor import G10, G30, IOTA, P, QubitAmplitudes, encode_qubit
from .tensor import (
    BELL_LABELS,
    TensorMultivector,
    as_tensor,
    bell_states,
    decode_state,
    encode_state,
    projector,
    tensor,
    tensor_power,
)

Which = Literal["B1", "B2"]

BIVECTORS = {
    "B1": gamma(1, 0) * gamma(2, 0),
    "B2": gamma(2, 0) * gamma(3, 0),
}


@dataclass(frozen=True)
class BraidGenerator:
    which: str
    value: Multivector

    def __mul__(self, other):
        return self.value * (other.value if isinstance(other, BraidGenerator) else other)


def braid_b(which: Which) -> BraidGenerator:
    """(1 + bivector)/sqrt 2, computed as exp(pi/4 * bivector)."""
    if which not in BIVECTORS:
        raise ValueError(f"unknown braid generator {which!r}")
    return BraidGenerator(which, exp_bivector(1, BIVECTORS[which]))


def closed_form(which: Which) -> Multivector:
    return (Multivector.scalar(STA, 1) + BIVECTORS[which]) * INV_SQRT2


class RelationWitness(NamedTuple):
    holds: bool
    common: object | None
    lhs: object
    rhs: object


def braid_relation_check(x, y) -> RelationWitness:
    """xyx == yxy exactly; ``common`` is the shared product when it holds."""
    x = x.value if isinstance(x, BraidGenerator) else x
    y = y.value if isinstance(y, BraidGenerator) else y
    lhs = x * y * x
    rhs = y * x * y
    ok = lhs == rhs
    return RelationWitness(ok, lhs if ok else None, lhs, rhs)


def braid_action(g, s):
    g = g.value if isinstance(g, BraidGenerator) else g
    return g * s


def braid_tensor_power(g, n: int) -> TensorMultivector:
    g = g.value if isinstance(g, BraidGenerator) else g
    return tensor_power(g, n)


# -- the generated group -----------------------------------------------------


@dataclass
class ClosureReport:
    order: int
    all_even: bool
    all_unit_norm: bool
    membership: str
    limit_hit: bool = False

    def to_dict(self):
        return {
            "group_order": self.order,
            "all_even": self.all_even,
            "all_unit_norm": self.all_unit_norm,
            "membership": self.membership,
            "limit_hit": self.limit_hit,
        }


def group_closure(generators=None, limit: int = 10_000) -> tuple[set, ClosureReport]:
    """Breadth-first closure under right multiplication by the generators.

    For a finite group the closure of the generators under multiplication
    is the generated group (inverses are positive powers).
    """
    gens = [g.value if isinstance(g, BraidGenerator) else g for g in (generators or (braid_b("B1"), braid_b("B2")))]
    seen = set(gens)
    frontier = list(gens)
    limit_hit = False
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = a * g
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        if len(seen) > limit:
            limit_hit = True
            break
        frontier = nxt
    kinds = {spin_membership(e) for e in seen}
    report = ClosureReport(
        order=len(seen),
        all_even=all(e.is_even() for e in seen),
        all_unit_norm=all((e * e.reverse()) == Multivector.scalar(STA, 1) for e in seen),
        membership=kinds.pop() if len(kinds) == 1 else "mixed",
        limit_hit=limit_hit,
    )
    return seen, report


# -- Bell states -------------------------------------------------------------


@dataclass
class ActionRow:
    operator: str
    state: str
    raw_equal: bool
    state_equal: bool
    image: str
    difference: str

    def to_dict(self):
        return dict(self.__dict__)


def bell_invariance_check() -> list[ActionRow]:
    """Action of (B1)^(x2) and (B2)^(x2) on the four Bell states.

    ``state_equal`` compares decoded amplitudes: the two-slot ideal is a real
    tensor product in which I x 1 and 1 x I both stand for i, so equal
    states can have different raw tensor expansions.  ``raw_equal``
    records the stricter term-by-term comparison.
    """
    bells = bell_states()
    rows = []
    for which in ("B1", "B2"):
        op = braid_tensor_power(braid_b(which), 2)
        for label in BELL_LABELS:
            s = bells[label]
            img = op * s
            same = decode_state(img) == decode_state(s)
            diff = canonical_state(img) - canonical_state(s)
            rows.append(ActionRow(f"({which})^x2", label, img == s, same, str(img), str(diff)))
    return rows


def canonical_state(state: TensorMultivector) -> TensorMultivector:
    """Normal form of an ideal element: the imaginary unit moved to the last slot."""
    return encode_state(decode_state(state))


# -- teleportation ---------------------------------------------------------------

CORRECTIONS: dict[str, Multivector] = {
    "Psi+": Multivector.scalar(STA, 1),
    "Psi-": G30,
    "Phi+": G10,
    "Phi-": G10 * G30,
}


class Branch(NamedTuple):
    label: str
    correction: Multivector
    payload: Multivector

    def recovered(self) -> Multivector:
        """Bob's state after undoing the correction."""
        return self.correction.adjoint() * self.payload


@dataclass
class TeleportDecomposition:
    input: QubitAmplitudes
    lhs: TensorMultivector
    rhs: TensorMultivector
    branches: list[Branch] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def qubit_state(a, b) -> Multivector:
    """(a g3g0 + b g1g0) P for real a, b."""
    return encode_qubit(QubitAmplitudes(a, 0, b, 0))


def teleport_decompose(a, b) -> TeleportDecomposition:
    """psi_C x Psi+_AB against 1/2 sum_label Bell_CA x (correction psi_B)."""
    if not a and not b:
        raise ValueError("zero state cannot be teleported")
    psi = qubit_state(a, b)
    bells = bell_states()
    lhs = as_tensor(psi).concat(bells["Psi+"])
    rhs = TensorMultivector.zero(3)
    branches = []
    for label in BELL_LABELS:
        corr = CORRECTIONS[label]
        payload = corr * psi
        branches.append(Branch(label, corr, payload))
        rhs = rhs + bells[label].concat(payload).scale(HALF)
    return TeleportDecomposition(QubitAmplitudes(a, 0, b, 0), lhs, rhs, branches)


def random_pair(rng: random.Random, span: int = 20) -> tuple[Fraction, Fraction]:
    while True:
        a = Fraction(rng.randint(-span, span), rng.randint(1, span))
        b = Fraction(rng.randint(-span, span), rng.randint(1, span))
        if a or b:
            return a, b


@dataclass
class TeleportSuite:
    samples: int
    passed: int
    failures: list

    def to_dict(self):
        return {"teleport_samples": self.samples, "passed": self.passed, "failures": self.failures}


def teleport_suite(samples: int = 100, seed: int = 0) -> TeleportSuite:
    rng = random.Random(seed)
    failures = []
    passed = 0
    for _ in range(samples):
        a, b = random_pair(rng)
        d = teleport_decompose(a, b)
        psi = qubit_state(a, b)
        ok = d.holds and all(br.recovered() == psi for br in d.branches)
        if ok:
            passed += 1
        else:
            failures.append({"a": str(a), "b": str(b)})
    return TeleportSuite(samples, passed, failures)


# -- the i|01>, i|10> representations ---------------------------------------------


@dataclass
class EquivalenceRow:
    state: str
    forms: tuple[str, str]
    decoded_equal: bool
    raw_equal: bool
    matches_display: tuple[bool, bool]

    def to_dict(self):
        return dict(self.__dict__)


def i_state_equivalence_check() -> list[EquivalenceRow]:
    """Both ways of attaching the imaginary unit to |01> and |10>."""
    p2 = projector(2)
    g1020 = G10 * gamma(2, 0)
    g2030 = gamma(2, 0) * G30
    rows = []
    for name, (u, v), displays in (
        ("i|01>", (G30, G10), (tensor([g1020 * P, G10 * P]), tensor([G30 * P, g2030 * P]))),
        ("i|10>", (G10, G30), (tensor([g2030 * P, G30 * P]), tensor([G10 * P, g1020 * P]))),
    ):
        left = tensor([IOTA * u, v]) * p2
        right = tensor([u, IOTA * v]) * p2
        rows.append(
            EquivalenceRow(
                name,
                (str(left), str(right)),
                decode_state(left) == decode_state(right),
                left == right,
                (left == displays[0], right == displays[1]),
            )
        )
    return rows


def decoded(s) -> tuple:
    """Amplitudes of a one- or many-slot ideal element as (re, im) pairs."""
    return tuple((c.re, c.im) for c in decode_state(as_tensor(s)).amps)
