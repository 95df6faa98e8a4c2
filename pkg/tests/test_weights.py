"""Tests for slowly varying weights."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zygmund.errors import DomainError, ParameterError
from zygmund.regularity import (
    SlowlyVaryingWeight,
    WeightFamily,
    check_slow_variation,
    eval_weight,
    potter_bound,
)
from zygmund.regularity.weights import CONST, slow_variation_profile

DYADIC_EPS = 2.0 ** -np.arange(1, 41)


# --- Evaluation Tests ---

class TestEvalWeight:
    def test_constant(self):
        assert eval_weight(CONST, 0.3) == 1.0
        assert eval_weight(SlowlyVaryingWeight(WeightFamily.LOGPOW, 0.0), 1e-9) == 1.0

    def test_log_power(self):
        weight = SlowlyVaryingWeight(WeightFamily.LOGPOW, 1.0)
        assert eval_weight(weight, math.exp(-2.0)) == pytest.approx(3.0)
        assert eval_weight(weight, 1.0) == 1.0

    def test_iterated_log_power(self):
        weight = SlowlyVaryingWeight(WeightFamily.LOGLOGPOW, 2.0)
        assert eval_weight(weight, math.exp(-(math.e - 1.0))) == pytest.approx(4.0)

    @pytest.mark.parametrize(
        "family,beta",
        [("const", 0.0), ("logpow", 1.0), ("logpow", -1.0), ("logpow", 2.0), ("loglogpow", 1.0)],
    )
    def test_continuous_on_unit_interval(self, family, beta):
        weight = SlowlyVaryingWeight(family, beta)

        def largest_jump(count: int) -> float:
            values = [eval_weight(weight, float(y)) for y in np.geomspace(1e-12, 1.0, count)]
            return float(np.max(np.abs(np.diff(values))))

        coarse, fine = largest_jump(400), largest_jump(800)
        assert math.isfinite(coarse)
        assert fine <= 0.6 * coarse or fine == coarse == 0.0
        assert eval_weight(weight, 1.0) == 1.0
        assert eval_weight(weight, 1.0 - 1e-9) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("y", [0.0, -0.5, 1.5])
    def test_outside_unit_interval(self, y):
        with pytest.raises(DomainError):
            eval_weight(CONST, y)

    def test_vectorised(self):
        weight = SlowlyVaryingWeight("logpow", -1.0)
        values = weight(np.array([[1.0, 0.5], [0.25, 0.125]]))
        assert values.shape == (2, 2)
        assert np.all(np.diff(values.ravel()) < 0)

    def test_rejects_non_finite_exponent(self):
        with pytest.raises(ParameterError):
            SlowlyVaryingWeight(WeightFamily.LOGPOW, math.nan)


# --- Spec Parsing Tests ---

class TestFromSpec:
    def test_short_form(self):
        weight = SlowlyVaryingWeight.from_spec("logpow:1.5")
        assert weight.family is WeightFamily.LOGPOW
        assert weight.beta == 1.5
        assert weight.name == "logpow(1.5)"

    def test_mapping(self):
        weight = SlowlyVaryingWeight.from_spec({"family": "LogLogPow", "beta": -1})
        assert weight == SlowlyVaryingWeight(WeightFamily.LOGLOGPOW, -1.0)
        assert weight.to_dict() == {"family": "loglogpow", "beta": -1.0}

    def test_default(self):
        assert SlowlyVaryingWeight.from_spec(None) == CONST
        assert SlowlyVaryingWeight.from_spec("const").name == "const"

    @pytest.mark.parametrize("spec", ["cubic:1", "logpow:steep", {"family": "logpow", "beta": "x"}])
    def test_rejects_bad_spec(self, spec):
        with pytest.raises(ParameterError):
            SlowlyVaryingWeight.from_spec(spec)


# --- Slow Variation Tests ---

class TestSlowVariation:
    def test_constant_has_no_deviation(self):
        assert check_slow_variation(CONST, [0.5, 2.0], DYADIC_EPS) == 0.0

    def test_log_power_deviation_decays(self):
        weight = SlowlyVaryingWeight(WeightFamily.LOGPOW, 1.0)
        profile = slow_variation_profile(weight, [0.5, 2.0], DYADIC_EPS)
        assert np.all(np.diff(profile) < 0)
        deviation = check_slow_variation(weight, [0.5, 2.0], DYADIC_EPS)
        expected = math.log(2.0) / (1.0 + 40 * math.log(2.0))
        assert deviation == pytest.approx(expected, rel=1e-12)

    def test_rejects_bad_dilations(self):
        with pytest.raises(DomainError):
            check_slow_variation(CONST, [0.0, 2.0], DYADIC_EPS)

    def test_rejects_products_above_one(self):
        with pytest.raises(DomainError, match="a \\* eps"):
            check_slow_variation(CONST, [4.0], [0.5])

    def test_rejects_empty_grid(self):
        with pytest.raises(DomainError):
            check_slow_variation(CONST, [2.0], [])

    @settings(max_examples=40, deadline=None)
    @given(
        family=st.sampled_from([WeightFamily.LOGPOW, WeightFamily.LOGLOGPOW]),
        beta=st.floats(min_value=-3.0, max_value=3.0, allow_nan=False),
    )
    def test_deviation_shrinks_towards_zero(self, family, beta):
        weight = SlowlyVaryingWeight(family, beta)
        profile = slow_variation_profile(weight, [0.5, 2.0], [2.0**-4, 2.0**-60])
        assert profile[1] <= profile[0] + 1e-15


# --- Potter Bound Tests ---

class TestPotterBound:
    def test_constant_weight(self):
        bound = potter_bound(CONST, [0.01, 0.1, 0.5], [0.5, 1.0, 2.0])
        assert bound == pytest.approx(0.5)

    def test_skips_pairs_outside_unit_interval(self):
        weight = SlowlyVaryingWeight(WeightFamily.LOGPOW, 2.0)
        bound = potter_bound(weight, [1.0], [0.5, 1.0, 4.0])
        expected = max((1 + math.log(2.0)) ** 2 / 2.5, 0.5)
        assert bound == pytest.approx(expected)

    def test_no_admissible_pair(self):
        with pytest.raises(DomainError):
            potter_bound(CONST, [0.9], [2.0])

    @settings(max_examples=30, deadline=None)
    @given(beta=st.floats(min_value=-4.0, max_value=4.0, allow_nan=False))
    def test_log_power_is_bounded(self, beta):
        weight = SlowlyVaryingWeight(WeightFamily.LOGPOW, beta)
        y = 2.0 ** -np.arange(0, 30)
        a = 2.0 ** np.arange(-10, 11, dtype=float)
        bound = potter_bound(weight, y, a)
        assert math.isfinite(bound)
        assert bound >= 0.5 - 1e-12

    @pytest.mark.parametrize("family,beta", [("logpow", 1.0), ("logpow", -1.0), ("loglogpow", 1.0)])
    def test_stable_under_refinement(self, family, beta):
        weight = SlowlyVaryingWeight(family, beta)
        coarse = potter_bound(weight, 2.0 ** -np.arange(0, 30), 2.0 ** np.arange(-10.0, 11.0))
        fine = potter_bound(
            weight, 2.0 ** (-np.arange(0, 59) / 2), 2.0 ** (np.arange(-20.0, 21.0) / 2)
        )
        assert fine == pytest.approx(coarse, rel=0.05)

    @pytest.mark.parametrize(
        "family,beta",
        [("const", 0.0), ("logpow", 1.0), ("logpow", -1.0), ("logpow", 2.0), ("loglogpow", 1.0)],
    )
    def test_bound_holds_off_the_grid(self, family, beta):
        weight = SlowlyVaryingWeight(family, beta)
        bound = potter_bound(
            weight, 2.0 ** -np.linspace(0.0, 30.0, 241), 2.0 ** np.linspace(-10.0, 10.0, 161)
        )
        rng = np.random.default_rng(20)
        y = 2.0 ** rng.uniform(-30.0, 0.0, 4000)
        a = 2.0 ** rng.uniform(-10.0, 10.0, 4000)
        keep = a * y <= 1.0
        y, a = y[keep], a[keep]
        assert y.size > 1000
        ratio = weight(a * y) / weight(y)
        assert np.all(ratio <= 1.01 * bound * (a + 1.0 / a))


# --- Acceptance Tests ---

class TestWeightFamilies:
    @pytest.mark.parametrize(
        "weight",
        [CONST, SlowlyVaryingWeight("logpow", 1.0), SlowlyVaryingWeight("loglogpow", 1.0)],
        ids=["const", "logpow", "loglogpow"],
    )
    def test_slowly_varying_at_tiny_eps(self, weight):
        eps = np.geomspace(1e-2, 1e-12, 11)
        assert check_slow_variation(weight, [0.5, 2.0], eps) <= 0.05

    def test_negative_log_power_dominates_small_powers(self):
        weight = SlowlyVaryingWeight("logpow", -0.5)
        y = np.geomspace(1.0, 1e-12, 500)
        assert np.all(y**0.01 <= 10.0 * weight(y))
