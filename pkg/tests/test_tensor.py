import random
from fractions import Fraction
from itertools import product

import numpy as np
import oracles
import pytest
from conftest import scalars, tensors
from hypothesis import given
from hypothesis import strategies as st

from spinorqc.algebra import STA, Multivector, gamma, pseudoscalar
from spinorqc.errors import NotInIdealError, SlotMismatch
from spinorqc.scalar import INV_SQRT2, ComplexScalar, Scalar
from spinorqc.spinor import P, QubitAmplitudes, encode_qubit
from spinorqc.tensor import (
    BELL_LABELS,
    MultiQubitAmplitudes,
    TensorMultivector,
    amplitude_determinant,
    bell_states,
    decode_state,
    delta_consistency_check,
    delta_sign,
    encode_state,
    in_ideal,
    is_factorable,
    projector,
    state_inner_product,
    tensor,
    tensor_reverse,
    tmul,
    unitarity_check,
)

ONE = Multivector.scalar(STA, 1)
IOTA = pseudoscalar()
G30, G10 = gamma(3, 0), gamma(1, 0)
B1 = (ONE + gamma(1, 0, 2, 0)) * INV_SQRT2
B2 = (ONE + gamma(2, 0, 3, 0)) * INV_SQRT2
P2 = projector(2)


def test_tensor_examples():
    ket00 = tensor([G30, G30]) * P2
    assert decode_state(ket00).amps == (1, 0, 0, 0)
    assert tensor([ONE, ONE]) == TensorMultivector.identity(2)
    assert tensor([G10, ONE]) * tensor([ONE, G10]) == tensor([G10, G10])


def test_tensor_needs_parts():
    with pytest.raises(ValueError):
        tensor([])


def test_tmul_examples():
    assert tmul(tensor([B1, B1]), tensor([B1.reverse(), B1.reverse()])) == TensorMultivector.identity(2)
    x = tensor([B1, G30])
    assert tmul(x, TensorMultivector.identity(2)) == x
    assert tmul(tensor([G30, ONE]), tensor([ONE, G30])) == tensor([G30, G30])


def test_tmul_slot_mismatch():
    with pytest.raises(SlotMismatch):
        tmul(TensorMultivector.identity(2), TensorMultivector.identity(3))


@given(tensors(2, max_terms=3), tensors(2, max_terms=3), tensors(2, max_terms=3))
def test_tmul_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(tensors(3))
def test_identity(a):
    one = TensorMultivector.identity(3)
    assert one * a == a and a * one == a


@given(tensors(2), tensors(2))
def test_slotwise_product_matches_kron(a, b):
    # kron of Dirac images multiplies slotwise, so it is an independent check of the ungraded product
    def image(t):
        out = np.zeros((16, 16), dtype=complex)
        for key, c in t.terms.items():
            out = out + complex(c) * np.kron(oracles.dirac_blade(key[0]), oracles.dirac_blade(key[1]))
        return out

    np.testing.assert_allclose(image(a * b), image(a) @ image(b), atol=1e-8)


@given(tensors(2, max_terms=4), tensors(2, max_terms=4))
def test_tensor_reverse_of_product(a, b):
    assert tensor_reverse(tmul(a, b)) == tmul(tensor_reverse(b), tensor_reverse(a))


def test_tensor_reverse_examples():
    assert tensor_reverse(tensor([B1, B2])) == tensor([B1.reverse(), B2.reverse()])
    x = tensor([B1, gamma(1, 2, 3)])
    assert tensor_reverse(tensor_reverse(x)) == x
    assert tensor_reverse(tensor([B1])) == tensor([B1.reverse()])


def test_unitarity_examples():
    assert unitarity_check(tensor([B1, B1]))
    assert not unitarity_check(tensor([P, P]))
    assert unitarity_check(TensorMultivector.identity(3))


# -- the product-algebra parity rule --------------------------------------------------


def test_delta_sign_examples():
    assert delta_sign((1, 2), (1, 3)) == 0
    assert delta_sign((1,), (2,)) == 0
    assert delta_sign((2, 3), (2, 3)) == 0
    assert delta_sign((1, 2, 3), (1, 2, 3)) == 0


def test_delta_sign_needs_equal_lengths():
    with pytest.raises(SlotMismatch):
        delta_sign((1,), (1, 2))


def _brute_delta_oracle(I, J):
    """Sign exponent read off the ungraded product: 0 iff rho(e_I) rho(e_J) anticommute or are equal."""
    agree = sum(i == j for i, j in zip(I, J))
    if agree == len(I):
        return 0
    # slots that differ each contribute one anticommuting swap
    return 0 if (len(I) - agree) % 2 == 1 else 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_delta_rule_matches_swap_count(n):
    for I in product(range(4), repeat=n):
        for J in product(range(4), repeat=n):
            assert delta_sign(I, J) == _brute_delta_oracle(I, J)


@pytest.mark.parametrize("n, conflicts", [(1, 4), (2, 16), (3, 64)])
def test_delta_consistency(n, conflicts):
    report = delta_consistency_check(n)
    assert report.pairs_checked == 4 ** (2 * n)
    assert report.violations == []
    assert len(report.clause_conflicts) == conflicts
    assert all(c["I"] == c["J"] for c in report.clause_conflicts)
    assert report.to_dict()["passed"] is True


def test_delta_n2_example_anticommutator_is_zero():
    a = TensorMultivector(STA, 2, {(0b0010, 0b0100): 1})
    b = TensorMultivector(STA, 2, {(0b0010, 0b1000): 1})
    assert a * b + b * a == TensorMultivector.zero(2)


# -- multi-qubit states -----------------------------------------------------------------------


def test_bipartite_expansion_term_for_term():
    alphas = [Scalar(k) for k in range(1, 9)]
    left = [G30, G30, G30, G30, G10, G10, G10, G10]
    right = [G30, gamma(1, 0, 2, 0), G10, gamma(2, 0, 3, 0)] * 2
    displayed = TensorMultivector.zero(2)
    for a, x, y in zip(alphas, left, right):
        displayed = displayed + tensor([x, y]).scale(a)
    displayed = displayed * P2
    state = encode_state(MultiQubitAmplitudes.from_reals(alphas))
    assert state == displayed
    assert decode_state(displayed).reals() == tuple(alphas)


def test_i_ket1_alternative_form():
    assert IOTA * G10 * P == gamma(2, 0, 3, 0) * P


def test_n1_reduces_to_single_qubit():
    q = QubitAmplitudes(1, 2, 3, 4)
    state = encode_state(MultiQubitAmplitudes.from_reals(q.as_tuple()))
    assert state == tensor([encode_qubit(q)])


def _random_amps(rng, n):
    def r():
        return Scalar(Fraction(rng.randint(-20, 20), rng.randint(1, 9)), Fraction(rng.randint(-3, 3), rng.randint(1, 5)))

    return MultiQubitAmplitudes(n, tuple(ComplexScalar(r(), r()) for _ in range(1 << n)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_encode_decode_bijective(n):
    rng = random.Random(n)
    seen = set()
    for _ in range(1000):
        amps = _random_amps(rng, n)
        state = encode_state(amps)
        assert decode_state(state) == amps
        seen.add((amps, state))
    assert len({a for a, _ in seen}) == len({s for _, s in seen})


@given(st.lists(scalars(), min_size=8, max_size=8))
def test_decode_matches_kron_column(values):
    amps = MultiQubitAmplitudes.from_reals(values)
    col = oracles.column(encode_state(amps))
    np.testing.assert_allclose(col, [complex(a) for a in amps.amps], atol=1e-9)


def test_decode_rejects_non_ideal():
    with pytest.raises(NotInIdealError, match="not in ideal"):
        decode_state(TensorMultivector.identity(2))
    assert not in_ideal(tensor([G30, ONE]))


def test_amplitude_count_checked():
    with pytest.raises(ValueError):
        MultiQubitAmplitudes(2, (1, 0, 0))
    with pytest.raises(ValueError):
        MultiQubitAmplitudes.from_reals([1, 2, 3, 4, 5, 6])


def test_state_json_round_trip():
    amps = MultiQubitAmplitudes(2, (ComplexScalar(Fraction(1, 2), 0), 0, ComplexScalar(0, Scalar(0, 1)), 1))
    assert MultiQubitAmplitudes.from_json(amps.to_json()) == amps


# -- Bell states ------------------------------------------------------------------------------------


def test_bell_phi_plus_display():
    phi = bell_states()["Phi+"]
    assert phi == (tensor([G30, G30]) + tensor([G10, G10])) * P2 * INV_SQRT2


def test_bell_decodes():
    r = INV_SQRT2
    expected = {
        "Phi+": (r, 0, 0, 0, 0, 0, r, 0),
        "Phi-": (r, 0, 0, 0, 0, 0, -r, 0),
        "Psi+": (0, 0, r, 0, r, 0, 0, 0),
        "Psi-": (0, 0, r, 0, -r, 0, 0, 0),
    }
    # the oracle column reproduces the same vectors
    for label, state in bell_states().items():
        assert decode_state(state).reals() == expected[label]
        col = oracles.column(state)
        np.testing.assert_allclose(col.real, [float(x) for x in expected[label][::2]], atol=1e-12)


def test_bell_orthonormal():
    states = bell_states()
    for x, y in product(BELL_LABELS, repeat=2):
        _raw, normalized = state_inner_product(states[x], states[y])
        assert normalized == (1 if x == y else 0)


def test_entanglement():
    states = bell_states()
    assert not is_factorable(states["Phi+"])
    assert not is_factorable(states["Psi-"])
    assert is_factorable(tensor([G30, G30]) * P2)
    # a rank-one 2x2 amplitude matrix from the matrix oracle
    assert amplitude_determinant(states["Phi+"]) == ComplexScalar(Fraction(1, 2), 0)
    ket = oracles.column(states["Phi+"]).reshape(2, 2)
    assert abs(np.linalg.det(ket) - 0.5) < 1e-12


@given(st.lists(scalars(), min_size=4, max_size=4), st.lists(scalars(), min_size=4, max_size=4))
def test_product_states_are_factorable(x, y):
    state = tensor([encode_qubit(QubitAmplitudes(*x)), encode_qubit(QubitAmplitudes(*y))])
    assert is_factorable(state)


def test_entanglement_needs_two_slots():
    with pytest.raises(SlotMismatch):
        is_factorable(tensor([P]))
