"""Exact arithmetic in Z[1/p]: canonical form, norm, fractional part, characters."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_mra.padic_core import (
    PadicRational,
    PrimeMismatchError,
    character,
    character_phase,
    enumerate_Ip_ball,
    parse_rational,
)

primes = st.sampled_from([2, 3, 5])
nums = st.integers(min_value=-(3**6), max_value=3**6)
exps = st.integers(min_value=-4, max_value=6)


@st.composite
def rationals(draw, prime=None):
    p = prime if prime is not None else draw(primes)
    return PadicRational(p, draw(nums), draw(exps))


def frac_by_digits(p: int, x: PadicRational) -> Fraction:
    """Fractional-part oracle: read off the negative-power base-p digits.

    Writes x = a/p^e with a >= 0 mod p^e and accumulates digit_i / p^(e-i)
    for the e lowest digits of a, entirely in integer arithmetic.
    """
    if x.exp == 0:
        return Fraction(0)
    a = x.num % p**x.exp
    out = Fraction(0)
    for i in range(x.exp):
        digit = (a // p**i) % p
        out += Fraction(digit, p ** (x.exp - i))
    return out


class TestCanonicalForm:
    def test_reduces_common_powers(self):
        x = PadicRational(3, 18, 2)
        assert (x.num, x.exp) == (2, 0)

    def test_zero_is_unique(self):
        assert PadicRational(5, 0, 4) == PadicRational(5, 0, 0)

    def test_negative_exp_multiplies_in(self):
        x = PadicRational(2, 3, -2)
        assert (x.num, x.exp) == (12, 0)

    @given(rationals())
    def test_invariant(self, x):
        assert x.exp >= 0
        assert x.exp == 0 or x.num % x.prime != 0

    def test_rejects_composite_prime(self):
        with pytest.raises(ValueError):
            PadicRational(4, 1, 0)


class TestNormAndValuation:
    def test_norm_of_18_base_3(self):
        # v_3(18) = 2, so |18|_3 = 1/9
        assert PadicRational(3, 18, 0).norm() == pytest.approx(1 / 9)

    def test_norm_of_inverse_prime(self):
        assert PadicRational(2, 1, 1).norm() == 2.0

    def test_zero(self):
        z = PadicRational(7, 0, 0)
        assert z.valuation == math.inf
        assert z.norm() == 0.0

    @given(rationals(prime=3), rationals(prime=3))
    def test_ultrametric(self, x, y):
        s = (x + y).norm()
        assert s <= max(x.norm(), y.norm()) + 1e-15
        if x.norm() != y.norm():
            assert s == max(x.norm(), y.norm())

    @given(rationals(prime=2), rationals(prime=2))
    def test_norm_multiplicative(self, x, y):
        assert (x * y).norm() == pytest.approx(x.norm() * y.norm())


class TestFractionalPart:
    def test_minus_half_base_2(self):
        # -1/2 = ...111.1 in base 2; the digit below the point is 1
        x = PadicRational(2, -1, 1)
        assert x.frac_part().as_fraction() == Fraction(1, 2)
        assert frac_by_digits(2, x) == Fraction(1, 2)

    @given(rationals())
    def test_matches_digit_expansion(self, x):
        assert x.frac_part().as_fraction() == frac_by_digits(x.prime, x)

    @given(rationals())
    def test_idempotent_and_lands_in_Ip(self, x):
        f = x.frac_part()
        assert f.is_in_Ip()
        assert f.frac_part() == f

    @given(rationals())
    def test_difference_is_integer(self, x):
        assert (x - x.frac_part()).is_integer()


class TestCharacter:
    def test_at_three_halves(self):
        # {3/2}_2 = 1/2, chi = e^(i pi) = -1
        assert character(PadicRational(2, 3, 1)) == pytest.approx(-1.0)

    def test_at_quarter(self):
        assert character(PadicRational(2, 1, 2)) == pytest.approx(1j)

    def test_trivial_on_integers(self):
        assert character_phase(PadicRational(3, 14, 0)) == 0

    @given(rationals(prime=3), rationals(prime=3))
    def test_additive(self, x, y):
        lhs = character_phase(x + y)
        rhs = (character_phase(x) + character_phase(y)) % 1
        assert lhs == rhs

    @given(rationals(prime=2), st.integers(min_value=-8, max_value=8))
    def test_integer_power_law(self, x, k):
        lhs = character_phase(x * k)
        rhs = (k * character_phase(x)) % 1
        assert lhs == rhs


class TestEnumeration:
    @pytest.mark.parametrize("p,N", [(2, 0), (2, 3), (3, 2), (5, 1)])
    def test_ball_contents(self, p, N):
        pts = enumerate_Ip_ball(p, N)
        assert len(pts) == p**N
        assert len(set(pts)) == len(pts)
        for x in pts:
            assert x.is_in_Ip()
            assert x.norm() <= p**N

    def test_nonpositive_radius_collapses_to_origin(self):
        assert enumerate_Ip_ball(3, 0) == [PadicRational(3, 0, 0)]
        assert enumerate_Ip_ball(3, -2) == [PadicRational(3, 0, 0)]


class TestParsing:
    @pytest.mark.parametrize(
        "token,expected",
        [
            ("7", PadicRational(2, 7, 0)),
            ("-3/4", PadicRational(2, -3, 2)),
            ("5/p^3", PadicRational(2, 5, 3)),
            ("0", PadicRational(2, 0, 0)),
        ],
    )
    def test_accepts(self, token, expected):
        assert parse_rational(2, token) == expected

    def test_negative_caret_exponent_folds_in(self):
        assert parse_rational(2, "2/p^-1") == PadicRational(2, 4, 0)

    @pytest.mark.parametrize("token", ["1/3", "x", "2/p^q", ""])
    def test_rejects_and_names_the_token(self, token):
        with pytest.raises(ValueError) as err:
            parse_rational(2, token)
        assert token in str(err.value) or token == ""

    @given(rationals())
    def test_round_trip_through_str(self, x):
        assert parse_rational(x.prime, str(x)) == x


class TestMixedPrimes:
    def test_add_raises(self):
        with pytest.raises(PrimeMismatchError):
            PadicRational(2, 1, 1) + PadicRational(3, 1, 1)

    def test_mul_raises(self):
        with pytest.raises(PrimeMismatchError):
            PadicRational(2, 1, 0) * PadicRational(5, 1, 0)


@given(rationals(), rationals())
def test_field_ops_match_fraction_arithmetic(x, y):
    if x.prime != y.prime:
        return
    assert (x + y).as_fraction() == x.as_fraction() + y.as_fraction()
    assert (x - y).as_fraction() == x.as_fraction() - y.as_fraction()
    assert (x * y).as_fraction() == x.as_fraction() * y.as_fraction()
