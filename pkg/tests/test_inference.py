"""Critical values, variance plug-ins, confidence sets, robust-null cutoff."""

import math

import numpy as np
import pytest

from antebounds.bounds import SignRegime, identified_set_benchmark
from antebounds.inference import (
    NOT_ROBUST,
    ROBUSTLY_REJECTED,
    ConfidenceSet,
    DegenerateVarianceError,
    VarianceComponents,
    bound_variances,
    confidence_set,
    critical_value_cn,
    robust_null_check,
    summary_mode_infer,
    tstar,
)
from antebounds.numerics import std_normal_cdf, std_normal_quantile
from antebounds.panel import GTransform, group_stats

from test_panel import make_panel

OPP = SignRegime(1, -1)
SAME = SignRegime(1, 1)

# High-precision roots of the defining equations (30-digit arithmetic).
CN_AT_ZERO = 1.9599639845400542
CN_AT_ONE = 1.6814774423281544
Z_ONE_SIDED = 1.6448536269514727
TSTAR_95 = 3.2991469042756099


class TestCriticalValue:
    def test_zero_width_is_two_sided(self):
        assert critical_value_cn(0.0, 1.0, 1, 0.95) == pytest.approx(CN_AT_ZERO, abs=1e-5)

    def test_wide_interval_is_one_sided(self):
        assert critical_value_cn(1e6, 1.0, 1, 0.95) == pytest.approx(
            Z_ONE_SIDED, abs=1e-4
        )

    def test_unit_ratio(self):
        # root of Phi(C + 1) - Phi(-C) = 0.95
        assert critical_value_cn(1.0, 1.0, 1, 0.95) == pytest.approx(CN_AT_ONE, abs=1e-6)

    def test_residual_of_returned_root(self):
        for ratio in (0.0, 0.3, 1.0, 2.7, 10.0):
            c = critical_value_cn(ratio, 1.0, 1, 0.95)
            residual = std_normal_cdf(c + ratio) - std_normal_cdf(-c) - 0.95
            assert abs(residual) < 1e-8

    def test_decreasing_and_bounded(self):
        alpha = 0.95
        lo, hi = std_normal_quantile(alpha), std_normal_quantile((1 + alpha) / 2)
        prev = math.inf
        for ratio in np.linspace(0.0, 100.0, 60):
            c = critical_value_cn(float(ratio), 1.0, 1, alpha)
            assert lo - 1e-8 <= c <= hi + 1e-8
            assert c <= prev + 1e-9
            prev = c

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            critical_value_cn(0.0, 1.0, 1, 0.4)
        with pytest.raises(ValueError):
            critical_value_cn(0.0, 1.0, 1, 1.0)

    def test_scaling_by_n_and_sigma(self):
        # only sqrt(n)*delta/sigma matters
        a = critical_value_cn(0.5, 2.0, 100, 0.95)
        b = critical_value_cn(0.5 * math.sqrt(100) / 2.0, 1.0, 1, 0.95)
        assert a == pytest.approx(b, abs=1e-9)


class TestTstar:
    def test_published_cutoff_value(self):
        t = tstar(0.95)
        assert t == pytest.approx(TSTAR_95, abs=1e-6)
        assert t == pytest.approx(3.2996, abs=1e-3)
        assert round(t, 1) == 3.3

    @pytest.mark.parametrize("alpha", [0.6, 0.9, 0.95, 0.99])
    def test_residual(self, alpha):
        t = tstar(alpha)
        assert abs(std_normal_cdf(t) - std_normal_cdf(-t / 2) - alpha) < 1e-10

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            tstar(0.5)


class TestBoundVariances:
    def test_hand_value(self):
        # treated diffs {1, 3}, control diffs {0, 2}: each variance 2,
        # p-hat 0.5 -> contrast-scale variance 2/0.5 + 2/0.5 = 8
        panel = make_panel([0, 0, 0, 0], [1, 3, 0, 2], [1, 1, 0, 0])
        vc = bound_variances(panel, GTransform.identity(), 0.5, OPP)
        assert vc.sigma_u == pytest.approx(math.sqrt(8.0))
        assert vc.sigma_l == pytest.approx(math.sqrt(8.0) / 1.5)
        assert vc.sigma == vc.sigma_u

    def test_hand_value_nonzero_covariance(self):
        # treated (y0, y1) in {(0,1), (2,5)}: var(y1) = 8, var(y0) = 2,
        # cov = 4, so the diff variance is 8 + 2 - 2*4 = 2; control
        # contributes 2 as before -> contrast-scale variance still 8
        panel = make_panel([0, 2, 0, 0], [1, 5, 0, 2], [1, 1, 0, 0])
        gs = group_stats(panel, GTransform.identity())
        assert gs.cov[1] == pytest.approx(4.0)
        vc = bound_variances(panel, GTransform.identity(), 0.5, OPP)
        assert vc.sigma_u == pytest.approx(math.sqrt(8.0))

    def test_scaled_regime_divisor(self):
        panel = make_panel([0, 0, 0, 0], [1, 3, 0, 2], [1, 1, 0, 0])
        vc = bound_variances(panel, GTransform.identity(), 0.5, SAME)
        # 1/(1-pi) scale: the scaled endpoint is the upper one and dominates
        assert vc.sigma_u == pytest.approx(math.sqrt(8.0) / 0.5)
        assert vc.sigma_l == pytest.approx(math.sqrt(8.0))
        assert vc.sigma == vc.sigma_u

    def test_constant_diffs_zero_variance(self):
        # diffs constant within both groups -> contrast variance 0
        panel = make_panel([0, 1, 0, 1], [2, 3, 1, 2], [1, 1, 0, 0])
        gs = group_stats(panel, GTransform.identity())
        var_m = (gs.sigma2[1, 1] + gs.sigma2[1, 0] - 2 * gs.cov[1]) / gs.p_hat + (
            gs.sigma2[0, 1] + gs.sigma2[0, 0] - 2 * gs.cov[0]
        ) / (1 - gs.p_hat)
        assert var_m == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(DegenerateVarianceError):
            bound_variances(panel, GTransform.identity(), 0.5, OPP)

    def test_pi_one_rejected(self):
        panel = make_panel([0, 0, 0, 0], [1, 3, 0, 2], [1, 1, 0, 0])
        with pytest.raises(ValueError, match="pi < 1"):
            bound_variances(panel, GTransform.identity(), 1.0, SAME)


class TestConfidenceSet:
    def test_point_identified_limit(self):
        vc = VarianceComponents(sigma_l=1.0, sigma_u=1.0, n=1)
        cs = confidence_set(0.4, 0.4, vc, 0.95)
        assert cs.lower == pytest.approx(0.4 - CN_AT_ZERO, abs=1e-5)
        assert cs.upper == pytest.approx(0.4 + CN_AT_ZERO, abs=1e-5)

    def test_contains_interval(self):
        vc = VarianceComponents(sigma_l=0.5, sigma_u=1.0, n=25)
        cs = confidence_set(0.1, 0.9, vc, 0.95)
        assert cs.lower < 0.1 and cs.upper > 0.9

    def test_ordering_enforced(self):
        vc = VarianceComponents(sigma_l=1.0, sigma_u=1.0, n=4)
        with pytest.raises(ValueError, match="ordered"):
            confidence_set(1.0, 0.0, vc, 0.95)

    def test_monotone_in_alpha(self):
        vc = VarianceComponents(sigma_l=0.8, sigma_u=1.0, n=50)
        inner = confidence_set(0.2, 0.5, vc, 0.90)
        outer = confidence_set(0.2, 0.5, vc, 0.95)
        assert outer.lower < inner.lower and inner.upper < outer.upper


class TestRobustNull:
    def test_rejected(self):
        assert robust_null_check(3.5, 0.95, OPP) == ROBUSTLY_REJECTED

    def test_not_robust(self):
        assert robust_null_check(2.0, 0.95, OPP) == NOT_ROBUST

    def test_absolute_value(self):
        assert robust_null_check(-3.5, 0.95, OPP) == ROBUSTLY_REJECTED

    def test_same_sign_regime_rejected(self):
        with pytest.raises(ValueError, match="opposite-sign"):
            robust_null_check(3.5, 0.95, SAME)


class TestSummaryMode:
    def test_grade8_reading(self):
        interval, cs = summary_mode_infer(0.013, 0.0046, 0.5, None, OPP, 0.95)
        assert interval.lower == pytest.approx(0.013 / 1.5, abs=1e-12)
        assert interval.upper == 0.013
        # high-precision endpoints of the defining construction
        assert cs.lower == pytest.approx(0.0009029474286565338, abs=1e-8)
        assert cs.upper == pytest.approx(0.0207637192380101330, abs=1e-8)
        # match to the published rounded values within one rounding unit
        assert cs.lower == pytest.approx(0.001, abs=1e-3)
        assert cs.upper == pytest.approx(0.021, abs=1e-3)

    def test_all_grades_math(self):
        _, cs = summary_mode_infer(0.003, 0.0033, 0.5, None, OPP, 0.95)
        assert cs.lower == pytest.approx(-0.004, abs=1e-3)
        assert cs.upper == pytest.approx(0.010, abs=1e-3)

    def test_zero_pi_classical_interval(self):
        _, cs = summary_mode_infer(0.5, 0.1, 0.0, None, OPP, 0.95)
        assert cs.lower == pytest.approx(0.5 - 1.959964 * 0.1, abs=1e-5)
        assert cs.upper == pytest.approx(0.5 + 1.959964 * 0.1, abs=1e-5)

    def test_pi_070_brushes_zero(self):
        _, cs = summary_mode_infer(0.013, 0.0046, 0.70, None, OPP, 0.95)
        assert abs(cs.lower) < 1e-3

    def test_imperfect_epsilon(self):
        interval, cs = summary_mode_infer(1.0, 0.1, 0.5, 0.5, SAME, 0.95)
        assert interval.lower == pytest.approx(0.8)
        assert interval.upper == pytest.approx(1.0 / 0.75)
        assert cs.lower < interval.lower and cs.upper > interval.upper

    def test_se_domain(self):
        with pytest.raises(ValueError, match="positive"):
            summary_mode_infer(1.0, 0.0, 0.5, None, OPP, 0.95)


class TestEndToEndPanelInference:
    def test_full_pipeline_matches_summary_mode(self):
        rng = np.random.default_rng(31)
        n = 400
        d = np.array([1] * 200 + [0] * 200)
        y0 = rng.normal(size=n)
        y1 = rng.normal(size=n) + 0.3 * d
        panel = make_panel(y0, y1, d)
        g = GTransform.identity()
        m = group_stats(panel, g).diff_in_diff()
        interval = identified_set_benchmark(m, 0.4, OPP)
        vc = bound_variances(panel, g, 0.4, OPP)
        cs = confidence_set(interval.lower, interval.upper, vc, 0.95)
        # summary mode with the matching SE reproduces the same set
        se_m = bound_variances(panel, g, 0.0, SignRegime(1, 0)).se
        interval2, cs2 = summary_mode_infer(m, se_m, 0.4, None, OPP, 0.95)
        assert interval2.lower == pytest.approx(interval.lower, abs=1e-12)
        assert cs2.lower == pytest.approx(cs.lower, abs=1e-10)
        assert cs2.upper == pytest.approx(cs.upper, abs=1e-10)
