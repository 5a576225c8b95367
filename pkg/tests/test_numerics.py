from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from lpzeros.numerics import (
    DomainError,
    Precision,
    gamma_ratio_product,
    log_gamma,
    pochhammer,
    recip_gamma,
    to_fraction,
    to_mpf,
)

P = Precision(50)
TIGHT = mpmath.mpf(10) ** -50


def close(a, b, tol=TIGHT):
    with mpmath.workdps(80):
        return abs(mpmath.mpf(a) - mpmath.mpf(b)) < tol if not isinstance(a, mpmath.mpc) else abs(a - b) < tol


class TestPrecision:
    def test_defaults(self):
        p = Precision()
        assert (p.decimal_digits, p.guard_digits) == (50, 15)
        assert p.working_digits == 65

    @pytest.mark.parametrize("digits,guard", [(14, 15), (50, 9)])
    def test_rejects_low(self, digits, guard):
        with pytest.raises(ValueError):
            Precision(digits, guard)

    def test_doubled(self):
        assert Precision(30).doubled().decimal_digits == 60


class TestLogGamma:
    def test_one_and_two(self):
        assert close(log_gamma(1, P), 0)
        assert close(log_gamma(2, P), 0)

    def test_half(self):
        with mpmath.workdps(80):
            expected = mpmath.log(mpmath.sqrt(mpmath.pi))
        assert close(log_gamma(0.5, P), expected)
        assert mpmath.nstr(log_gamma(0.5, P), 10) == "0.5723649429"

    @pytest.mark.parametrize("x", [0, -1, -2.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma(x, P)


class TestRecipGamma:
    def test_one(self):
        assert recip_gamma(1, P) == 1

    @pytest.mark.parametrize("n", [0, -1, -3, -17])
    def test_poles_exact_zero(self, n):
        v = recip_gamma(n, P)
        assert v == 0 and not v  # exactly zero, not tiny

    def test_pole_exact_zero_complex_input(self):
        assert recip_gamma(mpmath.mpc(-3, 0), P) == 0

    def test_minus_half(self):
        with mpmath.workdps(80):
            expected = -1 / (2 * mpmath.sqrt(mpmath.pi))
        assert close(recip_gamma(-0.5, P), expected)
        assert mpmath.nstr(recip_gamma(-0.5, P), 10) == "-0.2820947918"

    @settings(max_examples=60, deadline=None)
    @given(st.floats(min_value=-20, max_value=20, allow_nan=False).filter(lambda x: x != round(x)))
    def test_recurrence(self, x):
        # 1/Gamma(x+1) = (1/Gamma(x)) / x
        with mpmath.workdps(80):
            lhs = recip_gamma(to_mpf(x) + 1, P)
            rhs = recip_gamma(x, P) / to_mpf(x)
            scale = max(abs(lhs), mpmath.mpf(1))
            assert abs(lhs - rhs) < mpmath.mpf(10) ** -45 * scale

    def test_complex_matches_mpmath(self):
        z = mpmath.mpc(0.3, -2.1)
        with mpmath.workdps(80):
            assert abs(recip_gamma(z, P) - mpmath.rgamma(z)) < TIGHT


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(2, 3, P) == 24
        assert pochhammer(7.25, 0, P) == 1
        assert close(pochhammer(0.5, 2, P), 0.75)

    def test_gamma_ratio_examples(self):
        assert close(gamma_ratio_product(-1.5, 1, P), -1.5)
        assert gamma_ratio_product(-1, 3, P) == 0
        assert gamma_ratio_product(3, 2, P) == 12

    @settings(max_examples=80, deadline=None)
    @given(st.floats(min_value=-10, max_value=10, allow_nan=False),
           st.integers(0, 12), st.integers(0, 12))
    def test_split(self, a, m, n):
        with mpmath.workdps(80):
            whole = pochhammer(a, m + n, P)
            parts = pochhammer(a, m, P) * pochhammer(to_mpf(a) + m, n, P)
            assert abs(whole - parts) <= mpmath.mpf(10) ** -45 * max(1, abs(whole))

    def test_integer_zero_factor_is_exact(self):
        # A factor hits zero exactly, so the product is exactly zero.
        assert pochhammer(-4, 7, P) == 0


class TestPrecisionStability:
    @pytest.mark.parametrize("fn,arg", [(log_gamma, 3.7), (recip_gamma, -2.3), (recip_gamma, 0.1)])
    def test_doubling_digits(self, fn, arg):
        low = fn(arg, Precision(30))
        high = fn(arg, Precision(60))
        with mpmath.workdps(80):
            assert abs(low - high) < mpmath.mpf(10) ** -30


class TestConversions:
    def test_float_goes_through_decimal_repr(self):
        with mpmath.workdps(50):
            assert to_mpf(0.1) == mpmath.mpf("0.1")

    def test_fraction(self):
        with mpmath.workdps(50):
            assert to_mpf(Fraction(1, 3)) == mpmath.mpf(1) / 3

    def test_to_fraction(self):
        assert to_fraction(3) == 3
        assert to_fraction(Fraction(2, 7)) == Fraction(2, 7)
