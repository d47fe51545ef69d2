from fractions import Fraction

import numpy as np
import oracles
import pytest
from conftest import amplitude_values, fractions
from hypothesis import given
from hypothesis import strategies as st

from spinorqc.algebra import STA, Multivector, exp_bivector, gamma
from spinorqc.braid import (
    CORRECTIONS,
    braid_action,
    braid_b,
    braid_relation_check,
    braid_tensor_power,
    canonical_state,
    closed_form,
    decoded,
    group_closure,
    i_state_equivalence_check,
    qubit_state,
    teleport_decompose,
    teleport_suite,
)
from spinorqc.scalar import INV_SQRT2, Scalar
from spinorqc.spinor import P, QubitAmplitudes, decode_qubit, encode_qubit
from spinorqc.tensor import bell_states, decode_state, tensor, unitarity_check

ONE = Multivector.scalar(STA, 1)
G30, G10, G20 = gamma(3, 0), gamma(1, 0), gamma(2, 0)
B1, B2 = braid_b("B1").value, braid_b("B2").value
R = INV_SQRT2


def test_closed_forms():
    assert B1 == (ONE + G10 * G20) * R == closed_form("B1")
    assert B2 == (ONE + G20 * G30) * R == closed_form("B2")
    assert B1 == exp_bivector(1, G10 * G20)
    assert str(B1) == "1/2*rt2 - 1/2*rt2*g1*g2"


def test_unknown_generator():
    with pytest.raises(ValueError):
        braid_b("B3")


def test_unit_norm():
    assert B1.norm_squared() == 1 and B2.norm_squared() == 1


def test_artin_relation():
    w = braid_relation_check(braid_b("B1"), braid_b("B2"))
    assert w.holds
    assert w.common == (G10 * G20 + G20 * G30) * R
    assert str(w.common) == "-1/2*rt2*g1*g2 - 1/2*rt2*g2*g3"


def test_relation_examples():
    assert braid_relation_check(B1, B1).holds
    w = braid_relation_check(gamma(0), gamma(1))
    assert not w.holds and w.common is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tensor_power_relation(n):
    x, y = braid_tensor_power(braid_b("B1"), n), braid_tensor_power(braid_b("B2"), n)
    assert braid_relation_check(x, y).holds
    assert unitarity_check(x) and unitarity_check(y)


def test_tensor_power_n1():
    assert braid_tensor_power(braid_b("B1"), 1) == tensor([B1])


def test_sigma_forms():
    # B1 = (1 + i sigma3)/sqrt2, B2 = (1 + i sigma1)/sqrt2
    s = 2**-0.5
    np.testing.assert_allclose(oracles.pauli(B1), s * (np.eye(2) + 1j * oracles.S3), atol=1e-15)
    np.testing.assert_allclose(oracles.pauli(B2), s * np.array([[1, 1j], [1j, 1]]), atol=1e-15)
    assert abs(np.linalg.det(oracles.pauli(B1)) - 1) < 1e-12
    assert abs(np.linalg.det(oracles.pauli(B2)) - 1) < 1e-12


def test_algebraic_actions():
    assert braid_action(braid_b("B1"), G30 * P) == (G30 + G10 * G20) * P * R
    assert braid_action(braid_b("B1"), G10 * P) == (G10 - G20 * G30) * P * R
    assert braid_action(braid_b("B2"), G30 * P) == (G30 + G20 * G30) * P * R
    assert braid_action(braid_b("B2"), G10 * P) == (G10 * G20 + G10) * P * R


@pytest.mark.parametrize(
    "which, ket, amps",
    [
        ("B1", G30 * P, (R, R, 0, 0)),  # (1+i)/sqrt2 |0>
        ("B1", G10 * P, (0, 0, R, -R)),  # (1-i)/sqrt2 |1>
        ("B2", G30 * P, (R, 0, 0, R)),  # (|0> + i|1>)/sqrt2
        ("B2", G10 * P, (0, R, R, 0)),  # (i|0> + |1>)/sqrt2
    ],
)
def test_decoded_actions(which, ket, amps):
    assert decode_qubit(braid_action(braid_b(which), ket)).as_tuple() == amps


@given(amplitude_values)
def test_action_commutes_with_decode(values):
    s = encode_qubit(QubitAmplitudes(*values))
    for g in (B1, B2):
        c0, c1 = decode_qubit(g * s).complex_pair()
        np.testing.assert_allclose([complex(c0), complex(c1)], oracles.pauli(g) @ oracles.column(s), atol=1e-9)


# -- the generated group -------------------------------------------------------------


def test_group_closure():
    elements, report = group_closure()
    assert report.order == len(elements) == 48
    assert report.all_even and report.all_unit_norm
    assert report.membership == "spin_plus"
    assert not report.limit_hit


def test_group_order_matches_matrix_oracle():
    order = oracles.matrix_group_order([oracles.pauli(B1), oracles.pauli(B2)])
    assert order == 48 == group_closure()[1].order


def test_closure_limit():
    _, report = group_closure([B1.scale(2)], limit=20)
    assert report.limit_hit


# -- Bell states ------------------------------------------------------------------------


def test_bell_invariance_under_b1():
    bells = bell_states()
    op = braid_tensor_power(braid_b("B1"), 2)
    for label in ("Psi+", "Psi-"):
        image = op * bells[label]
        assert decode_state(image) == decode_state(bells[label])
        assert canonical_state(image) == bells[label]


def test_b2_not_invariant_on_psi_plus():
    bells = bell_states()
    op = braid_tensor_power(braid_b("B2"), 2)
    image = op * bells["Psi+"]
    diff = canonical_state(image) - bells["Psi+"]
    assert diff
    # the image is i Phi+ in amplitude terms
    expected = tuple(a * 1j for a in (complex(x) for x in decode_state(bells["Phi+"]).amps))
    np.testing.assert_allclose([complex(a) for a in decode_state(image).amps], expected, atol=1e-15)


def test_bell_action_against_kron_oracle():
    bells = bell_states()
    for g in (B1, B2):
        op = np.kron(oracles.pauli(g), oracles.pauli(g))
        for s in bells.values():
            image = braid_tensor_power(g, 2) * s
            np.testing.assert_allclose(oracles.column(image), op @ oracles.column(s), atol=1e-12)


# -- teleportation ------------------------------------------------------------------------


def test_correction_table():
    assert CORRECTIONS == {"Psi+": ONE, "Psi-": G30, "Phi+": G10, "Phi-": G10 * G30}
    assert str(CORRECTIONS["Phi-"]) == "-g1*g3"


def test_teleport_basis_state():
    d = teleport_decompose(1, 0)
    assert d.holds
    assert d.lhs == d.rhs


def test_teleport_three_four_five():
    d = teleport_decompose(Fraction(3, 5), Fraction(4, 5))
    assert d.holds
    branch = {b.label: b for b in d.branches}["Psi+"]
    assert decode_qubit(branch.payload).as_tuple() == (Fraction(3, 5), 0, Fraction(4, 5), 0)


def test_teleport_zero_state():
    with pytest.raises(ValueError):
        teleport_decompose(0, 0)


@given(fractions, fractions)
def test_teleport_identity(a, b):
    if not a and not b:
        return
    d = teleport_decompose(a, b)
    assert d.holds
    psi = qubit_state(a, b)
    for br in d.branches:
        assert br.payload == br.correction * psi
        assert br.recovered() == psi


def test_teleport_against_kron_oracle():
    # psi x Psi+ = 1/2 sum Bell x (sigma_corr psi) as 8-vectors
    a, b = Fraction(2, 7), Fraction(-5, 3)
    d = teleport_decompose(a, b)
    lhs = oracles.column(d.lhs)
    psi = np.array([float(a), float(b)], dtype=complex)
    bells = bell_states()
    rhs = sum(
        0.5 * np.kron(oracles.column(bells[label]), oracles.pauli(CORRECTIONS[label]) @ psi) for label in bells
    )
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_teleport_suite():
    suite = teleport_suite(100, seed=0)
    assert suite.samples == 100 and suite.passed == 100 and suite.failures == []
    assert suite.to_dict()["teleport_samples"] == 100


def test_i_state_equivalence():
    rows = i_state_equivalence_check()
    assert [r.state for r in rows] == ["i|01>", "i|10>"]
    for r in rows:
        assert r.decoded_equal
        assert not r.raw_equal
        assert r.matches_display == (True, True)


@given(st.sampled_from(["Phi+", "Phi-", "Psi+", "Psi-"]))
def test_decoded_helper(label):
    pairs = decoded(bell_states()[label])
    assert len(pairs) == 4
    assert sum(re * re + im * im for re, im in pairs) == Scalar(1)
