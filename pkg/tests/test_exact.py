from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapcert.errors import NotClearable, ZeroDenominator
from gapcert.exact import (
    RatPoly,
    format_rational,
    parse_rational,
    poly_combine,
    poly_eval,
    rat_normalize,
)

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=997
)
small_polys = st.lists(rationals, max_size=6).map(RatPoly.make)


class TestRatNormalize:
    def test_gcd_reduction(self):
        assert rat_normalize(2, 4) == F(1, 2)

    def test_zero_canonical(self):
        z = rat_normalize(0, 5)
        assert (z.numerator, z.denominator) == (0, 1)

    def test_sign_normalization(self):
        x = rat_normalize(-3, -6)
        assert x == F(1, 2) and x.denominator == 6 // 6

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            rat_normalize(1, 0)

    @given(rationals)
    def test_idempotent(self, x):
        again = rat_normalize(x.numerator, x.denominator)
        assert again == x and again.denominator >= 1

    @given(rationals, rationals)
    def test_gcd_invariant_after_arithmetic(self, a, b):
        from math import gcd

        for v in (a + b, a - b, a * b):
            assert gcd(abs(v.numerator), v.denominator) == 1
            assert v.denominator >= 1


class TestParsing:
    @pytest.mark.parametrize(
        "text,value",
        [("3/4", F(3, 4)), ("-3/4", F(-3, 4)), ("7", F(7)), ("-12", F(-12)), (" 5/10 ", F(1, 2))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "a", "1/-2", "1.5", "3//4", "1/ 0x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_parse_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            parse_rational("1/0")

    @given(rationals)
    def test_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x


class TestPolyEval:
    def test_three_minus_t_at_one(self):
        p = RatPoly.make([3, -1])
        assert poly_eval(p, F(1)) == 2

    def test_three_minus_t_at_zero(self):
        assert poly_eval(RatPoly.make([3, -1]), F(0)) == 3

    def test_zero_poly(self):
        assert poly_eval(RatPoly.ZERO, F(17, 3)) == 0

    def test_degree_and_trim(self):
        assert RatPoly.make([1, 2, 0, 0]).degree == 1
        assert RatPoly.ZERO.degree == -1


class TestPolyCombine:
    def test_recurrence_step(self):
        # one step of the certificate recurrence: 3*1 - t*1
        out = poly_combine(3, RatPoly.ONE, -1, RatPoly.ONE, shift=1)
        assert out == RatPoly.make([3, -1])

    def test_identity_combination(self):
        p = RatPoly.make([F(1, 2), 4])
        assert poly_combine(1, p, 0, RatPoly.ONE) == p

    def test_next_step(self):
        out = poly_combine(5, RatPoly.make([3, -1]), -1, RatPoly.ONE, shift=1)
        assert out == RatPoly.make([15, -6])

    def test_negative_shift_rejected(self):
        with pytest.raises(ValueError):
            poly_combine(1, RatPoly.ONE, 1, RatPoly.ONE, shift=-1)

    @settings(max_examples=60)
    @given(small_polys, small_polys, rationals, rationals, rationals, st.integers(0, 4))
    def test_eval_commutes(self, p, q, alpha, beta, x, shift):
        combined = poly_combine(alpha, p, beta, q, shift)
        assert poly_eval(combined, x) == alpha * poly_eval(p, x) + beta * x**shift * poly_eval(q, x)


class TestDenominatorExponent:
    def test_single_halved_coefficient(self):
        assert RatPoly.make([F(3, 2), -1]).denominator_exponent(2) == 1

    def test_already_integral(self):
        assert RatPoly.make([3, -1]).denominator_exponent(7) == 0

    def test_bessel_certificate_coefficients(self):
        from gapcert.bessel import bessel_cert

        u2 = bessel_cert(2, F(1, 3)).u
        assert u2.denominator_exponent(3) <= 2

    def test_not_clearable(self):
        with pytest.raises(NotClearable):
            RatPoly.make([F(1, 6)]).denominator_exponent(2)

    def test_base_below_two(self):
        with pytest.raises(ValueError):
            RatPoly.ONE.denominator_exponent(1)

    @settings(max_examples=60)
    @given(small_polys, st.integers(2, 12))
    def test_minimality(self, p, base):
        try:
            e = p.denominator_exponent(base)
        except NotClearable:
            return
        scaled = RatPoly.make([c * base**e for c in p.coeffs])
        assert scaled.is_integral()
        if e > 0:
            under = RatPoly.make([c * base ** (e - 1) for c in p.coeffs])
            assert not under.is_integral()
