from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsusy.qcore import (
    GAUSS_I,
    GAUSS_ONE,
    Deformation,
    GaussRational,
    format_rational,
    i_power,
    parse_rational,
    q_factorial,
    q_number,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
positive_qs = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=16)


class TestQNumber:
    def test_zero_and_one(self):
        for q in (F(2), F(3, 2), F(1), F(7, 5)):
            d = Deformation(q)
            assert q_number(0, d) == 0
            assert q_number(1, d) == 1

    def test_hand_values(self):
        d = Deformation(F(2))
        assert q_number(2, d) == F(5, 2)
        assert q_number(3, d) == F(21, 4)
        assert q_number(2, Deformation(F(1, 2))) == F(5, 2)

    def test_classical_point(self):
        d = Deformation(F(1))
        for n in range(-6, 7):
            assert q_number(n, d) == n

    def test_odd_in_n(self):
        d = Deformation(F(3, 2))
        for n in range(1, 8):
            assert q_number(-n, d) == -q_number(n, d)

    @given(n=st.integers(min_value=-20, max_value=20), q=positive_qs)
    def test_reciprocal_symmetry(self, n, q):
        assert q_number(n, Deformation(q)) == q_number(n, Deformation(1 / q))

    @given(n=st.integers(min_value=1, max_value=15), q=positive_qs)
    def test_doubling_identity(self, n, q):
        # [2n] = [n] (q^n + q^-n): the scalar identity behind the kernel property
        d = Deformation(q)
        assert q_number(2 * n, d) == q_number(n, d) * (q**n + q**-n)

    def test_monotone_growth(self):
        d = Deformation(F(3, 2))
        for n in range(1, 12):
            assert q_number(n + 1, d) > q_number(n, d)


class TestQFactorial:
    def test_empty_product(self):
        assert q_factorial(0, Deformation(F(2))) == 1

    def test_hand_value(self):
        assert q_factorial(3, Deformation(F(2))) == F(105, 8)

    def test_classical(self):
        assert q_factorial(3, Deformation(F(1))) == 6
        assert q_factorial(5, Deformation(F(1))) == 120

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            q_factorial(-1, Deformation(F(2)))


class TestDeformation:
    def test_positive_required(self):
        with pytest.raises(ValueError):
            Deformation(F(0))
        with pytest.raises(ValueError):
            Deformation(F(-2))

    def test_classical_flag(self):
        assert Deformation(F(1)).is_classical
        assert not Deformation(F(2)).is_classical

    def test_reciprocal(self):
        assert Deformation(F(2)).reciprocal().q == F(1, 2)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            Deformation(1.5)


class TestGaussRational:
    def test_i_squared(self):
        assert GAUSS_I * GAUSS_I == GaussRational(-1, 0)

    def test_i_power_cycle(self):
        assert i_power(0) == GAUSS_ONE
        assert i_power(1) == GAUSS_I
        assert i_power(2) == GaussRational(-1, 0)
        assert i_power(-1) == GaussRational(0, -1)
        assert i_power(7) == i_power(3)

    def test_real_interchangeability(self):
        two = GaussRational(2, 0)
        assert two == F(2)
        assert two == 2
        assert hash(two) == hash(F(2))
        assert two.as_rational() == 2
        assert (two + F(1, 2)).re == F(5, 2)

    def test_imaginary_not_rational(self):
        with pytest.raises(ValueError):
            GAUSS_I.as_rational()

    @given(a=rationals, b=rationals, c=rationals, d=rationals)
    def test_division_inverts_multiplication(self, a, b, c, d):
        x = GaussRational(a, b)
        y = GaussRational(c, d)
        if not y:
            with pytest.raises(ZeroDivisionError):
                x / y
        else:
            assert (x / y) * y == x

    @given(a=rationals, b=rationals, c=rationals, d=rationals)
    def test_field_axioms_sample(self, a, b, c, d):
        x = GaussRational(a, b)
        y = GaussRational(c, d)
        assert x + y == y + x
        assert x * y == y * x
        assert x * (y + GAUSS_ONE) == x * y + x

    def test_pow(self):
        assert GAUSS_I**2 == GaussRational(-1, 0)
        assert GAUSS_I**-2 == GaussRational(-1, 0)
        assert GaussRational(2, 1) ** 0 == GAUSS_ONE

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            GaussRational(0.5, 0)


class TestRationalStrings:
    @pytest.mark.parametrize(
        "text,value",
        [("3/2", F(3, 2)), ("-7", F(-7)), ("1.5", F(3, 2)), ("0.125", F(1, 8)), ("2", F(2))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "x", "1/0", "3//2", "1.5.2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format(self):
        assert format_rational(F(3, 2)) == "3/2"
        assert format_rational(F(-4, 2)) == "-2"
        assert format_rational(F(0)) == "0"

    @given(value=rationals)
    def test_round_trip(self, value):
        assert parse_rational(format_rational(value)) == value
