"""Small-noise bound tests: pairwise terms, union bounds, asymptotics, burdens."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from ccl.bounds import (
    asymptotic_coefficient_average,
    asymptotic_coefficient_symbol,
    bound_report,
    burden,
    burden_max,
    pairwise_error_term,
    union_bound_average,
    union_bound_symbol,
)
from ccl.catalog import catalog_get
from ccl.errors import NonpositiveInput, NotEnoughPoints
from ccl.geometry import Constellation
from helpers import random_constellation

ASYM4 = catalog_get("asym4").constellation
QAM4 = catalog_get("qam4").constellation
RECT4 = catalog_get("rect4").constellation
KITE4 = catalog_get("kite4").constellation


def _tail_quadrature(d: float, gamma: float) -> float:
    """Independent oracle: scalar Cauchy tail mass beyond d/2."""
    val, _ = integrate.quad(
        lambda z: 1.0 / (math.pi * gamma * (1.0 + (z / gamma) ** 2)), d / 2.0, math.inf
    )
    return val


class TestPairwiseTerm:
    def test_quarter_exact(self):
        assert pairwise_error_term(1.0, 0.5) == 0.25
        assert pairwise_error_term(2.0, 1.0) == 0.25

    def test_small_gamma_against_quadrature(self):
        got = pairwise_error_term(1.0, 0.01)
        assert got == pytest.approx(0.006365349100972806, abs=1e-14)
        assert got == pytest.approx(_tail_quadrature(1.0, 0.01), abs=1e-11)

    def test_more_quadrature_points(self):
        for d, g in [(0.3, 0.2), (2.5, 1.7), (10.0, 0.05)]:
            assert pairwise_error_term(d, g) == pytest.approx(_tail_quadrature(d, g), abs=1e-11)

    def test_rejects_nonpositive(self):
        with pytest.raises(NonpositiveInput):
            pairwise_error_term(0.0, 1.0)
        with pytest.raises(NonpositiveInput):
            pairwise_error_term(1.0, -1.0)

    @given(
        d=st.floats(min_value=1e-3, max_value=1e3),
        g=st.floats(min_value=1e-3, max_value=1e3),
    )
    def test_range_and_ratio_dependence(self, d, g):
        term = pairwise_error_term(d, g)
        assert 0.0 < term < 0.5
        assert term == pytest.approx(pairwise_error_term(d / g, 1.0), abs=1e-12)

    @given(g=st.floats(min_value=1e-3, max_value=1e2))
    def test_decreasing_in_distance(self, g):
        assert pairwise_error_term(1.0, g) > pairwise_error_term(2.0, g)

    @given(d=st.floats(min_value=1e-2, max_value=1e2))
    def test_increasing_in_gamma(self, d):
        assert pairwise_error_term(d, 0.5) < pairwise_error_term(d, 1.0)


class TestUnionBound:
    def test_asym4_origin_small_gamma(self):
        expected = 3.0 * (0.5 - math.atan(50.0) / math.pi)
        assert union_bound_symbol(ASYM4, 0, 0.01) == pytest.approx(expected, abs=1e-14)
        assert union_bound_symbol(ASYM4, 0, 0.01) == pytest.approx(
            3.0 * _tail_quadrature(1.0, 0.01), abs=1e-10
        )

    def test_large_gamma_limit(self):
        # arctan(0+) -> 0, so the bound saturates at (M-1)/2.
        assert union_bound_symbol(ASYM4, 0, 1e12) == pytest.approx(1.5, abs=1e-9)
        assert union_bound_average(ASYM4, 1e12) == pytest.approx(1.5, abs=1e-9)

    def test_qam4_composition(self):
        expected = 2.0 * pairwise_error_term(2.0, 0.1) + pairwise_error_term(
            2.0 * math.sqrt(2.0), 0.1
        )
        for i in range(4):
            assert union_bound_symbol(QAM4, i, 0.1) == pytest.approx(expected, abs=1e-14)

    def test_two_point_average(self):
        c = Constellation([[0.0, 0.0], [1.0, 0.0]])
        assert union_bound_average(c, 0.5) == pytest.approx(0.25, abs=1e-14)

    def test_average_equals_both_routes(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            c = random_constellation(rng, m=int(rng.integers(2, 9)))
            gamma = float(rng.uniform(0.01, 10.0))
            per_symbol_route = union_bound_average(c, gamma)
            pair_sum = 0.0
            for i in range(c.m):
                for j in range(i + 1, c.m):
                    d = float(np.linalg.norm(c.points[j] - c.points[i]))
                    pair_sum += pairwise_error_term(d, gamma)
            assert abs(per_symbol_route - 2.0 * pair_sum / c.m) < 1e-12

    def test_bounds_within_range(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            c = random_constellation(rng, m=int(rng.integers(2, 9)))
            bound = union_bound_symbol(c, 0, float(rng.uniform(0.01, 100)))
            assert 0.0 <= bound <= (c.m - 1) / 2.0

    def test_needs_two_points(self):
        c = Constellation([[0.0, 0.0]])
        with pytest.raises(NotEnoughPoints):
            union_bound_symbol(c, 0, 1.0)
        with pytest.raises(NotEnoughPoints):
            union_bound_average(c, 1.0)


class TestAsymptotics:
    def test_asym4_per_symbol_coefficients(self):
        assert asymptotic_coefficient_symbol(ASYM4, 0) == pytest.approx(6 / math.pi, abs=1e-12)
        assert asymptotic_coefficient_symbol(ASYM4, 1) == pytest.approx(
            (2 / math.pi) * (1 + math.sqrt(2)), abs=1e-12
        )
        for i in (2, 3):
            assert asymptotic_coefficient_symbol(ASYM4, i) == pytest.approx(
                (3 + math.sqrt(2)) / math.pi, abs=1e-12
            )

    def test_asym4_average_coefficient(self):
        # Oracle: mean of the per-symbol coefficients.
        per = [asymptotic_coefficient_symbol(ASYM4, i) for i in range(4)]
        avg = asymptotic_coefficient_average(ASYM4)
        assert avg == pytest.approx(sum(per) / 4.0, abs=1e-12)
        assert avg == pytest.approx((3.5 + math.sqrt(2)) / math.pi, abs=1e-12)

    def test_two_point_reduction(self):
        c = Constellation([[0.0, 0.0], [0.0, 3.0]])
        assert asymptotic_coefficient_average(c) == pytest.approx(2 / (3 * math.pi), abs=1e-13)

    def test_average_equals_mean_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            c = random_constellation(rng, m=int(rng.integers(2, 9)))
            per = [asymptotic_coefficient_symbol(c, i) for i in range(c.m)]
            assert abs(asymptotic_coefficient_average(c) - sum(per) / c.m) < 1e-12

    def test_coefficient_is_two_over_pi_times_burden(self):
        for i in range(4):
            assert asymptotic_coefficient_symbol(ASYM4, i) == pytest.approx(
                (2 / math.pi) * burden(ASYM4, i), abs=1e-15
            )

    def test_cubic_remainder_decay(self):
        # The gap to the linear term must shrink like gamma^3.
        gammas = np.logspace(-4, -2, 9)
        coef = asymptotic_coefficient_symbol(ASYM4, 0)
        remainders = np.array(
            [abs(union_bound_symbol(ASYM4, 0, g) - coef * g) for g in gammas]
        )
        slope = np.polyfit(np.log(gammas), np.log(remainders), 1)[0]
        assert slope >= 2.9


class TestBurden:
    def test_asym4_origin(self):
        assert burden(ASYM4, 0) == pytest.approx(3.0, abs=1e-12)

    def test_rectangle(self):
        expected = 1.0 + math.sqrt(2 / 3) + math.sqrt(2 / 5)
        for i in range(4):
            assert burden(RECT4, i) == pytest.approx(expected, abs=1e-12)
        assert burden_max(RECT4) == pytest.approx(expected, abs=1e-12)

    def test_kite_max_attained_at_side_points(self):
        # Brute-force oracle over the distance lists of each symbol.
        per = [burden(KITE4, i) for i in range(4)]
        assert per[1] == max(per) and per[3] == max(per)
        assert burden_max(KITE4) == pytest.approx(1.0 + 4.0 / math.sqrt(5.0), abs=1e-12)
        assert per[0] == pytest.approx(0.5 + 4.0 / math.sqrt(5.0), abs=1e-12)

    def test_kite_burden_exceeds_rect(self):
        assert burden_max(KITE4) > burden_max(RECT4)

    def test_asym4_max(self):
        assert burden_max(ASYM4) == pytest.approx(3.0, abs=1e-12)

    def test_scale_law(self):
        rng = np.random.default_rng(8)
        c = random_constellation(rng, m=5)
        for s in (0.5, 2.0, 7.3):
            scaled = Constellation(s * c.points)
            for i in range(c.m):
                assert burden(scaled, i) == pytest.approx(burden(c, i) / s, rel=1e-12)


class TestBoundReport:
    def test_fields_consistent(self):
        rep = bound_report(ASYM4, 0.02)
        assert rep.avg_exact_bound == pytest.approx(
            union_bound_average(ASYM4, 0.02), abs=1e-15
        )
        assert np.allclose(
            rep.per_symbol_asymptotic_value,
            rep.per_symbol_asymptotic_coefficient * 0.02,
        )
        assert rep.avg_asymptotic_value == pytest.approx(
            asymptotic_coefficient_average(ASYM4) * 0.02, abs=1e-15
        )

    def test_clamping(self):
        rep = bound_report(ASYM4, 100.0)
        assert rep.avg_exact_bound > 1.0
        assert rep.avg_exact_bound_clamped == 1.0
        assert rep.per_symbol_exact_bound_clamped.max() == 1.0
