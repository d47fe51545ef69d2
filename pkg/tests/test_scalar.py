import math
from fractions import Fraction

import pytest
from conftest import nonzero_scalars, scalars
from hypothesis import given

from spinorqc.scalar import (
    HALF,
    INV_SQRT2,
    SQRT2,
    ComplexScalar,
    Scalar,
    format_coefficient,
    rational_sqrt,
)


def test_product_rule():
    # (a + b rt2)(c + d rt2) = (ac + 2bd) + (ad + bc) rt2
    x = Scalar(Fraction(1, 2), 3)
    y = Scalar(-2, Fraction(1, 3))
    assert x * y == Scalar(Fraction(1, 2) * -2 + 2 * 3 * Fraction(1, 3), Fraction(1, 2) * Fraction(1, 3) + 3 * -2)


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == 2
    assert INV_SQRT2 * INV_SQRT2 == HALF
    assert INV_SQRT2 * SQRT2 == 1


def test_reduced_rationals():
    s = Scalar(Fraction(4, 8), Fraction(-6, 4))
    assert s.rat == Fraction(1, 2) and s.rat.denominator == 2
    assert s.irr.denominator == 2 and s.irr.numerator == -3
    assert Scalar(0).rat.denominator == 1


def test_immutable():
    s = Scalar(1, 2)
    with pytest.raises(AttributeError):
        s.rat = Fraction(3)


@given(scalars(), scalars(), scalars())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0 and a * 1 == a and a + 0 == a


@given(nonzero_scalars)
def test_field_inverse(a):
    assert a * a.inverse() == 1
    assert a / a == 1


@given(scalars())
def test_zero_iff_both_parts_zero(a):
    assert (a == 0) == (a.rat == 0 and a.irr == 0)
    assert bool(a) == (a.rat != 0 or a.irr != 0)


@given(scalars(), scalars())
def test_multiplication_matches_float(a, b):
    exact = float(a * b)
    approx = float(a) * float(b)
    assert math.isclose(exact, approx, rel_tol=1e-12, abs_tol=1e-12)


@given(scalars(), scalars())
def test_order_matches_float(a, b):
    if abs(float(a) - float(b)) > 1e-9:
        assert (a < b) == (float(a) < float(b))
    assert a.sign() == (0 if a == 0 else (1 if float(a) > 0 else -1))


@given(scalars())
def test_text_round_trip(a):
    assert Scalar.parse(format_coefficient(a)) == a
    assert Scalar.parse(str(a)) == a


@pytest.mark.parametrize(
    "value, text",
    [
        (Scalar(Fraction(1, 2)), "1/2"),
        (Scalar(0, 1), "rt2"),
        (Scalar(0, -1), "-rt2"),
        (Scalar(0, Fraction(1, 2)), "1/2*rt2"),
        (Scalar(2, -1), "(2 - rt2)"),
        (Scalar(Fraction(-1, 3), Fraction(5, 7)), "(-1/3 + 5/7*rt2)"),
    ],
)
def test_canonical_text(value, text):
    assert str(value) == text
    assert Scalar.parse(text) == value


def test_parse_rejects_garbage():
    for bad in ("", "abc", "1/2/3", "rt3", "1 +"):
        with pytest.raises(ValueError):
            Scalar.parse(bad)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


@given(scalars(), scalars(), scalars(), scalars())
def test_complex_scalar_matches_python_complex(a, b, c, d):
    x, y = ComplexScalar(a, b), ComplexScalar(c, d)
    prod = complex(x * y)
    ref = complex(x) * complex(y)
    assert abs(prod - ref) <= 1e-9 * max(1.0, abs(ref))
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
