import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineint.coeff import (
    PAdic,
    ResidueElement,
    check_prime,
    lift_from_residue,
    padic_normalize,
    reduce_mod_p,
    vp_int,
)
from lineint.errors import InvalidInputError, NotIntegralError

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


class TestRational:
    # Rational coefficients are stdlib Fractions; pin the invariants we rely on.

    def test_normal_form(self):
        q = Fraction(6, -4)
        assert q.numerator == -3 and q.denominator == 2
        assert Fraction(0, 7) == Fraction(0, 1)

    @given(rationals, rationals, rationals)
    @settings(max_examples=200, derandomize=True)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + 0 == a and a * 1 == a


def rand_padic(rng, p, max_prec=12):
    n = rng.randint(-200, 200)
    d = rng.randint(1, 60)
    return padic_normalize(n, d, p, rng.randint(3, max_prec))


class TestNormalize:
    def test_integer_with_valuation(self):
        x = padic_normalize(12, 1, 2, 6)
        assert (x.valuation, x.unit, x.abs_prec) == (2, 3, 6)

    def test_denominator_inverse(self):
        x = padic_normalize(1, 3, 2, 4)
        assert (x.valuation, x.unit) == (0, 11)

    def test_zero(self):
        x = padic_normalize(0, 5, 5, 8)
        assert x.is_zero and x.abs_prec == 8

    def test_collapse_below_precision(self):
        x = padic_normalize(32, 1, 2, 4)
        assert x.is_zero and x.abs_prec == 4

    def test_zero_denominator_rejected(self):
        with pytest.raises(InvalidInputError):
            padic_normalize(1, 0, 2, 4)

    def test_composite_prime_rejected(self):
        with pytest.raises(InvalidInputError):
            padic_normalize(1, 1, 6, 4)
        with pytest.raises(InvalidInputError):
            check_prime(1)

    def test_negative_valuation(self):
        x = padic_normalize(3, 4, 2, 6)
        assert (x.valuation, x.unit) == (-2, 3)
        assert x.rel_prec == 8


class TestArithmetic:
    # Oracle: compare against plain integer arithmetic modulo p^N on the
    # exact rational representatives.

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_add_mul_against_integer_oracle(self, p):
        rng = random.Random(p * 1009)
        for _ in range(200):
            a, b = rand_padic(rng, p), rand_padic(rng, p)
            s, m = a + b, a * b
            fa, fb = a.to_fraction(), b.to_fraction()
            for got, expect in ((s, fa + fb), (m, fa * fb)):
                diff = expect - got.to_fraction()
                if diff != 0:
                    v = vp_int(diff.numerator, p) - vp_int(diff.denominator, p)
                    assert v >= got.abs_prec

    def test_add_precision_is_min(self):
        a = padic_normalize(3, 1, 2, 9)
        b = padic_normalize(5, 1, 2, 4)
        assert (a + b).abs_prec == 4

    def test_mul_precision_rule(self):
        a = padic_normalize(12, 1, 2, 6)   # v=2, N=6
        b = padic_normalize(5, 1, 2, 4)    # v=0, N=4
        assert (a * b).abs_prec == min(6 + 0, 4 + 2)

    def test_cancellation_raises_valuation(self):
        a = padic_normalize(3, 1, 2, 8)
        b = padic_normalize(-3 + 16, 1, 2, 8)
        c = a + b
        assert c.valuation == 4

    def test_scalar_int_preserves_relative_precision(self):
        a = padic_normalize(3, 1, 2, 5)
        assert (a * 4).abs_prec == 7 and (a * 4).valuation == 2
        assert (a / 4).abs_prec == 3 and (a / 4).valuation == -2
        assert (a * 0).is_zero

    def test_division(self):
        a = padic_normalize(12, 1, 2, 6)
        assert a / 4 == 3
        q = a / padic_normalize(3, 1, 2, 6)
        assert q == 4
        with pytest.raises(InvalidInputError):
            a / PAdic.zero(2, 5)

    def test_inverse(self):
        a = padic_normalize(3, 1, 2, 5)
        assert a.inverse().unit == 11
        assert a * a.inverse() == 1

    @pytest.mark.parametrize("p", [2, 5])
    def test_ultrametric_inequality(self, p):
        rng = random.Random(p)
        for _ in range(100):
            a, b = rand_padic(rng, p), rand_padic(rng, p)
            s = a + b
            assert s.valuation_floor >= min(a.valuation_floor, b.valuation_floor)
            m = a * b
            if not (a.is_zero or b.is_zero or m.is_zero):
                assert m.valuation == a.valuation + b.valuation

    def test_equality_at_min_precision(self):
        a = padic_normalize(3, 1, 2, 5)
        assert a == padic_normalize(3 + 32, 1, 2, 5)
        assert a != padic_normalize(3 + 16, 1, 2, 5)
        assert a == 3
        assert a != padic_normalize(3, 1, 3, 5)

    def test_mixed_prime_arithmetic_rejected(self):
        with pytest.raises(InvalidInputError):
            padic_normalize(1, 1, 2, 4) + padic_normalize(1, 1, 3, 4)


class TestResidue:
    def test_reduce_examples(self):
        assert reduce_mod_p(padic_normalize(1, 2, 3, 6)).value == 2
        assert reduce_mod_p(padic_normalize(12, 1, 2, 6)).value == 0
        assert reduce_mod_p(PAdic.zero(7, 3)).value == 0

    def test_reduce_rejects_negative_valuation(self):
        with pytest.raises(NotIntegralError):
            reduce_mod_p(padic_normalize(1, 2, 2, 6))

    def test_lift_round_trip(self):
        for p in (2, 3, 5):
            for v in range(p):
                r = ResidueElement(p, v)
                assert reduce_mod_p(lift_from_residue(r, 8)) == r

    def test_field_ops(self):
        a, b = ResidueElement(5, 3), ResidueElement(5, 4)
        assert (a + b).value == 2
        assert (a * b).value == 2
        assert (a * a.inverse()).value == 1
        with pytest.raises(InvalidInputError):
            ResidueElement(5, 0).inverse()
        with pytest.raises(InvalidInputError):
            ResidueElement(5, 7)

    def test_str(self):
        assert str(ResidueElement(3, 2)) == "2 (mod 3)"


class TestText:
    def test_str_forms(self):
        assert str(padic_normalize(12, 1, 2, 6)) == "2^2*3 (mod 2^6)"
        assert str(PAdic.zero(5, 4)) == "0 (mod 5^4)"
        assert str(padic_normalize(3, 4, 2, 6)) == "2^-2*3 (mod 2^6)"
