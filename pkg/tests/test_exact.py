"""Exact-arithmetic constants: duplication, ball volumes, binomial identities.

Expected values are either trivial, taken from the closed forms, or frozen
from an independent oracle (gamma-function evaluation, adaptive quadrature,
scipy.integrate.quad) computed inside the test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from geomprob import exact
from geomprob.exact import PiRational, PiSum
from geomprob.quadrature import adaptive_simpson

SMALL_INTS = st.integers(min_value=-40, max_value=40)
POS_INTS = st.integers(min_value=1, max_value=40)
HALF_POWERS = st.integers(min_value=-6, max_value=6)


def pi_rationals():
    return st.builds(PiRational, SMALL_INTS, POS_INTS, HALF_POWERS)


class TestPiRational:
    def test_reduction(self):
        v = PiRational(6, -4, 2)
        assert (v.num, v.den, v.half_power) == (-3, 2, 2)
        assert PiRational(0, 7, 3) == PiRational(0, 1, 0)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            PiRational(1, 0)

    def test_float_rendering(self):
        assert float(PiRational(35, 48, -4)) == pytest.approx(
            35 / (48 * math.pi**2), rel=1e-15
        )
        assert float(PiRational(1, 1, 1)) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_float_of_huge_integers(self):
        big = PiRational(math.factorial(40), math.factorial(38), -2)
        assert float(big) == pytest.approx(40 * 39 / math.pi, rel=1e-12)

    @given(pi_rationals(), pi_rationals())
    @settings(max_examples=80)
    def test_product_closure_and_reduction(self, a, b):
        c = a * b
        assert math.gcd(abs(c.num), c.den) == 1
        assert c.den > 0
        assert float(c) == pytest.approx(float(a) * float(b), rel=1e-12, abs=1e-300)

    @given(pi_rationals(), pi_rationals())
    @settings(max_examples=80)
    def test_division_inverts_product(self, a, b):
        if a.num == 0 or b.num == 0:
            return
        assert (a * b) / b == a

    @given(pi_rationals(), st.integers(min_value=-3, max_value=4))
    @settings(max_examples=80)
    def test_integer_powers(self, a, k):
        if a.num == 0 and k <= 0:
            return
        expected = PiRational(1)
        for _ in range(abs(k)):
            expected = expected * a
        if k < 0:
            expected = PiRational(1) / expected
        assert a**k == expected

    def test_addition_same_power(self):
        assert PiRational(1, 3, 2) + PiRational(1, 6, 2) == PiRational(1, 2, 2)

    def test_addition_mixed_power_builds_sum(self):
        total = PiRational(35, 72, -2) + PiRational(1, 3, 2)
        assert isinstance(total, PiSum)
        assert float(total) == pytest.approx(35 / (72 * math.pi) + math.pi / 3, rel=1e-15)

    def test_sum_collapses(self):
        s = PiRational(1, 2) + PiRational(1, 3, 2)
        assert isinstance(s - PiRational(1, 3, 2), PiRational)


class TestHalfIntegerFactorial:
    def test_base_case_is_sqrt_pi(self):
        assert exact.half_integer_factorial(-1) == PiRational(1, 1, 1)

    def test_integer_cases(self):
        assert exact.half_integer_factorial(4) == PiRational(2)
        assert exact.half_integer_factorial(0) == PiRational(1)

    def test_three_halves(self):
        # (3/2)! = (3/2)(1/2)! = (3/4) sqrt(pi)
        assert exact.half_integer_factorial(3) == PiRational(3, 4, 1)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.half_integer_factorial(-2)

    @pytest.mark.parametrize("m", range(0, 11))
    def test_duplication_formula(self, m):
        lhs = exact.half_integer_factorial(2 * m - 1)
        rhs = PiRational(math.factorial(2 * m), 2 ** (2 * m) * math.factorial(m), 1)
        assert lhs == rhs

    @pytest.mark.parametrize("two_k", range(-1, 22))
    def test_against_gamma_oracle(self, two_k):
        value = float(exact.half_integer_factorial(two_k))
        assert value == pytest.approx(math.gamma(two_k / 2 + 1), rel=1e-12)


class TestUnitBallVolume:
    @pytest.mark.parametrize(
        "n,expected",
        [
            (1, PiRational(2)),
            (2, PiRational(1, 1, 2)),
            (3, PiRational(4, 3, 2)),
            (4, PiRational(1, 2, 4)),
        ],
    )
    def test_known_volumes(self, n, expected):
        assert exact.unit_ball_volume(n) == expected

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.unit_ball_volume(0)

    @pytest.mark.parametrize("n", range(1, 18))
    def test_against_gamma_oracle(self, n):
        assert float(exact.unit_ball_volume(n)) == pytest.approx(
            math.pi ** (n / 2) / math.gamma(n / 2 + 1), rel=1e-12
        )


class TestHalfBallIntegral:
    def test_known_values(self):
        assert exact.half_ball_integral(9) == PiRational(128, 315)
        assert exact.half_ball_integral(1) == PiRational(1)

    def test_n16_matches_beta_ratio(self):
        expected = exact.unit_ball_volume(16) / (PiRational(2) * exact.unit_ball_volume(15))
        assert exact.half_ball_integral(16) == expected

    @pytest.mark.parametrize("n", range(1, 21))
    def test_against_adaptive_quadrature(self, n):
        value, _ = adaptive_simpson(lambda p: (1.0 - p * p) ** ((n - 1) / 2), 0.0, 1.0)
        assert abs(float(exact.half_ball_integral(n)) - value) <= 1e-10

    @pytest.mark.parametrize("n", [2, 5, 9, 16])
    def test_against_scipy_quad(self, n):
        value, _ = integrate.quad(lambda p: (1.0 - p * p) ** ((n - 1) / 2), 0.0, 1.0)
        assert float(exact.half_ball_integral(n)) == pytest.approx(value, rel=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.half_ball_integral(0)


class TestHalfIntegerBinomial:
    def test_examples(self):
        # 6 / ((3/4) sqrt(pi))^2 = 32/(3 pi)
        assert exact.half_integer_binomial(3) == PiRational(32, 3, -2)
        assert exact.half_integer_binomial(1) == PiRational(4, 1, -2)

    def test_closing_identity_n3(self):
        # C(n+1, (n+1)/2) = 2^(2n+4) / (pi (n+2)) * C(n+2, (n+2)/2)^(-1) at n = 3
        lhs = exact.central_binomial(4)
        rhs = (
            PiRational(2**10, 5, -2)
            / exact.central_binomial(5)
        )
        assert lhs == rhs

    @pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 15, 25])
    def test_closing_identity_general(self, n):
        lhs = exact.central_binomial(n + 1)
        rhs = PiRational(2 ** (2 * n + 4), n + 2, -2) / exact.central_binomial(n + 2)
        assert lhs == rhs

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            exact.half_integer_binomial(4)


class TestKingmanV:
    def test_known_values(self):
        assert exact.kingman_v(2) == PiRational(1, 3)
        assert exact.kingman_v(3) == PiRational(35, 48, -4)
        assert exact.kingman_v(4) == PiRational(9, 715)

    def test_v_b2_float(self):
        assert float(exact.kingman_v(3)) == pytest.approx(
            35 / (48 * math.pi**2), rel=1e-14
        )

    @pytest.mark.parametrize("n", range(2, 9))
    def test_pi_power_parity(self, n):
        v = exact.kingman_v(n)
        assert v.half_power == (0 if n % 2 == 0 else 2 * (1 - n))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_against_lgamma_oracle(self, n):
        def log_binom(a, b):
            return math.lgamma(a + 1) - 2 * math.lgamma(b + 1)

        log_v = n * log_binom(n, n / 2) - log_binom(n * n, n * n / 2) - (n - 1) * math.log(2)
        assert float(exact.kingman_v(n)) == pytest.approx(math.exp(log_v), rel=1e-11)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.kingman_v(1)


class TestSylvesterProbability:
    def test_d1_is_zero(self):
        assert exact.sylvester_probability(1) == PiRational(0)

    def test_d2(self):
        value = exact.sylvester_probability(2)
        assert float(value) == pytest.approx(1 - 35 / (12 * math.pi**2), rel=1e-14)
        assert value == PiRational(1) + PiRational(-35, 12, -4)

    def test_d3(self):
        assert exact.sylvester_probability(3) == PiRational(134, 143)
        assert float(exact.sylvester_probability(3)) == pytest.approx(134 / 143, rel=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.sylvester_probability(4)


class TestDensityLaws:
    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_secant_normalization(self, dim):
        assert exact.secant_offset_density(dim).normalization_defect() <= 1e-10

    def test_secant_values_at_zero(self):
        assert float(exact.secant_offset_density(2).pdf(0.0)) == pytest.approx(
            16 / (3 * math.pi), rel=1e-14
        )
        assert float(exact.secant_offset_density(3).pdf(0.0)) == pytest.approx(
            315 / 128, rel=1e-14
        )

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_zero_at_offset_one(self, dim):
        assert float(exact.secant_offset_density(dim).pdf(1.0)) == 0.0

    def test_nonnegative_on_support(self):
        grid = np.linspace(0, 1, 101)
        for law in (
            exact.secant_offset_density(2),
            exact.max_radius_density(),
            exact.disk_radius_density(),
        ):
            assert (law.pdf(grid) >= 0).all()

    def test_max_radius_and_disk_radius(self):
        assert exact.max_radius_density().normalization_defect() <= 1e-10
        assert exact.disk_radius_density().normalization_defect() <= 1e-10
        assert exact.max_radius_density().mean() == pytest.approx(6 / 7, rel=1e-10)

    def test_bin_probabilities_sum_to_one(self):
        law = exact.secant_offset_density(3)
        edges = np.linspace(0, 1, 41)
        assert law.bin_probabilities(edges).sum() == pytest.approx(1.0, abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            exact.secant_offset_density(5)


class TestReferenceConstants:
    def test_values(self):
        refs = exact.reference_constants()
        assert refs["center_triangle"] == PiRational(4, 9, -2)
        assert refs["boundary_triangle"] == PiRational(35, 36, -2)
        assert refs["disk_triangle"] == PiRational(35, 48, -2)
        assert refs["unit_interval_distance"] == PiRational(1, 3)
        assert float(refs["disk_triangle"]) == pytest.approx(35 / (48 * math.pi), rel=1e-14)
        assert float(refs["disk_triangle"]) == pytest.approx(0.2321009587, rel=1e-9)
        assert float(refs["offcut"]) == pytest.approx(
            35 / (72 * math.pi) + math.pi / 3, rel=1e-14
        )

    def test_constants_table_extras(self):
        table = exact.constants_table()
        assert table["beta_4"] == PiRational(1, 2, 4)
        assert table["v_b3"] == PiRational(9, 715)
        assert float(table["sylvester_2d"]) == pytest.approx(0.7044798810, rel=1e-9)
        assert float(table["mean_distance_disk"]) == pytest.approx(
            128 / (45 * math.pi), rel=1e-14
        )

    def test_as_dict_round_trip(self):
        for value in exact.constants_table().values():
            d = value.as_dict()
            assert d["value"] == pytest.approx(float(value), rel=1e-15)
