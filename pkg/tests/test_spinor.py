import numpy as np
import oracles
import pytest
from conftest import amplitude_values, even_multivectors, scalars
from hypothesis import given
from hypothesis import strategies as st

from spinorqc.algebra import STA, Multivector, gamma, pseudoscalar, reverse
from spinorqc.errors import NotInIdealError
from spinorqc.scalar import HALF, Scalar
from spinorqc.spinor import (
    BASIS,
    P,
    QubitAmplitudes,
    amplitudes,
    decode_qubit,
    dual,
    encode_qubit,
    idempotent_p,
    in_ideal,
    inner_product,
    left_iota,
    right_iota,
)

IOTA = pseudoscalar()
G30, G10 = gamma(3, 0), gamma(1, 0)
ZERO = Multivector.zero(STA)


def test_p_definition_and_idempotence():
    assert P == (Multivector.scalar(STA, 1) + G30).scale(HALF)
    assert P * P == P
    assert idempotent_p().is_idempotent()
    assert P.scalar_part() == HALF


def test_ideal_dimension_is_four():
    assert idempotent_p().left_ideal_dimension() == 4


def test_g30_absorbed_by_p():
    assert G30 * P == P


@pytest.mark.parametrize(
    "amps, element",
    [
        ((1, 0, 0, 0), G30 * P),
        ((0, 0, 1, 0), G10 * P),
        ((0, 1, 0, 0), IOTA * G30 * P),
        ((0, 0, 0, 1), IOTA * G10 * P),
    ],
)
def test_qubit_dictionary(amps, element):
    assert encode_qubit(QubitAmplitudes(*amps)) == element
    assert decode_qubit(element).as_tuple() == tuple(Scalar(a) for a in amps)


def test_i_ket0_alternative_form():
    assert IOTA * G30 * P == gamma(1, 0, 2, 0) * P


def test_decode_examples():
    assert decode_qubit(encode_qubit(amplitudes(1, 2, 3, 4))).as_tuple() == (1, 2, 3, 4)
    assert decode_qubit(P).as_tuple() == (1, 0, 0, 0)


@given(amplitude_values)
def test_round_trip(values):
    q = QubitAmplitudes(*values)
    s = encode_qubit(q)
    assert in_ideal(s)
    assert decode_qubit(s) == q


@given(amplitude_values)
def test_decode_matches_sigma_column(values):
    q = QubitAmplitudes(*values)
    col = oracles.column(encode_qubit(q))
    c0, c1 = q.complex_pair()
    np.testing.assert_allclose(col, [complex(c0), complex(c1)], atol=1e-9)


def test_decode_rejects_non_ideal():
    for bad in (Multivector.scalar(STA, 1), gamma(0), G30 - P, (Multivector.scalar(STA, 1) - G30) * HALF):
        with pytest.raises(NotInIdealError, match="not in ideal"):
            decode_qubit(bad)


def test_basis_elements_right_absorb_p():
    for b in BASIS:
        assert b * P == b and b.is_even()


# -- duals and the inner product ----------------------------------------------------------


def test_dual_examples():
    assert dual(G30 * P) == P * G30
    assert dual(ZERO) == ZERO


def test_dual_of_real_state_differs_from_bare_reverse():
    # reversion flips g3g0 inside P, so it leaves the right ideal generated by P
    ket0 = G30 * P
    assert dual(ket0) == P
    assert reverse(ket0) == (Multivector.scalar(STA, 1) - G30).scale(HALF)
    assert dual(ket0) != reverse(ket0)


@given(st.tuples(scalars(), scalars()))
def test_dual_of_real_state_is_g0_conjugated_reverse(ab):
    s = encode_qubit(QubitAmplitudes(ab[0], 0, ab[1], 0))
    assert dual(s) == gamma(0) * reverse(s) * gamma(0)


@given(amplitude_values)
def test_dual_is_adjoint(values):
    s = encode_qubit(QubitAmplitudes(*values))
    assert dual(s) == s.adjoint()


def test_inner_product_examples():
    ket0, ket1 = G30 * P, G10 * P
    assert inner_product(ket0, ket0) == (HALF, 1)
    assert inner_product(ket0, ket1) == (0, 0)
    assert inner_product(ZERO, ket1) == (0, 0)


@given(amplitude_values)
def test_positivity(values):
    q = QubitAmplitudes(*values)
    raw, normalized = inner_product(encode_qubit(q), encode_qubit(q))
    if any(values):
        assert raw > 0
    else:
        assert raw == 0
    assert normalized == q.norm_squared()


@given(amplitude_values, amplitude_values)
def test_normalized_product_is_hilbert_real_part(x, y):
    a, b = QubitAmplitudes(*x), QubitAmplitudes(*y)
    hilbert = np.vdot(oracles.column(encode_qubit(a)), oracles.column(encode_qubit(b)))
    assert abs(float(inner_product(encode_qubit(a), encode_qubit(b)).normalized) - hilbert.real) <= 1e-9


@given(st.tuples(scalars(), scalars()), st.tuples(scalars(), scalars()))
def test_symmetry_for_real_amplitudes(x, y):
    a = encode_qubit(QubitAmplitudes(x[0], 0, x[1], 0))
    b = encode_qubit(QubitAmplitudes(y[0], 0, y[1], 0))
    assert inner_product(a, b) == inner_product(b, a)


@given(even_multivectors(), amplitude_values, amplitude_values)
def test_adjoint_rule(O, x, y):
    phi, psi = encode_qubit(QubitAmplitudes(*x)), encode_qubit(QubitAmplitudes(*y))
    lhs = inner_product(O * phi, psi).raw
    rhs = (dual(phi) * O.adjoint() * psi).scalar_part()
    assert lhs == rhs


@given(even_multivectors())
def test_ideal_stability(O):
    for b in BASIS:
        assert in_ideal(O * b)


@given(even_multivectors(), amplitude_values)
def test_hilbert_consistency(O, values):
    s = encode_qubit(QubitAmplitudes(*values))
    c0, c1 = decode_qubit(O * s).complex_pair()
    expected = oracles.pauli(O) @ oracles.column(s)
    np.testing.assert_allclose([complex(c0), complex(c1)], expected, atol=1e-9)


@given(amplitude_values)
def test_iota_multiplication_stays_in_ideal(values):
    s = encode_qubit(QubitAmplitudes(*values))
    assert in_ideal(left_iota(s)) and in_ideal(right_iota(s))
    c0, c1 = decode_qubit(left_iota(s)).complex_pair()
    d0, d1 = QubitAmplitudes(*values).complex_pair()
    assert complex(c0) == pytest.approx(1j * complex(d0)) and complex(c1) == pytest.approx(1j * complex(d1))


def test_amplitude_json_round_trip():
    q = amplitudes("1/2", "-3/4", "rt2", "(1 - 1/2*rt2)")
    assert QubitAmplitudes.from_json(q.to_json()) == q
