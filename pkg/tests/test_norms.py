"""Tests for the Zygmund, Hoelder and second-difference norms and the seminorms."""

from __future__ import annotations

import json
import logging
import math

import numpy as np
import pytest
from scipy.special import erf

from zygmund.errors import ConfigurationError, DomainError, ParameterError
from zygmund.kernels import (
    build_lp_pair,
    make_band_bump,
    make_gaussian_derivative,
    make_meyer_lp_pair,
    meyer_lowpass,
)
from zygmund.pipeline.signals import weierstrass
from zygmund.regularity import (
    SlowlyVaryingWeight,
    halfspace_seminorm,
    holder_norm,
    refinement_ratio,
    schwartz_seminorm,
    second_difference_norm,
    zygmund_norm,
)
from zygmund.regularity.norms import is_refinement_stable
from zygmund.transform import (
    SampledSignal,
    ScaleGrid,
    Scalogram,
    bessel_potential,
    cwt_forward,
    derivative,
)

# (width, carrier, center) of the localized test family
FAMILY = [
    (0.5, 0.0, 0.0),
    (0.75, 0.0, 1.0),
    (1.0, 0.0, -1.0),
    (1.5, 0.0, 2.0),
    (2.0, 0.0, 0.0),
    (0.5, 2.0, 0.0),
    (0.75, 1.5, 1.0),
    (1.0, 2.5, -2.0),
    (1.5, 3.0, 0.0),
    (2.0, 1.0, 1.0),
]


# --- Helpers ---

def make_signal(func, t_min, t_max, dt, name="signal"):
    n = int(round((t_max - t_min) / dt))
    return SampledSignal.from_function(func, t_min, t_max, n, name=name)


def make_family(dt):
    signals = []
    for width, carrier, center in FAMILY:
        def packet(t, w=width, omega=carrier, c=center):
            return np.exp(-0.5 * ((t - c) / w) ** 2) * np.cos(omega * (t - c))

        signals.append(make_signal(packet, -32.0, 32.0, dt, name=f"packet({width},{carrier})"))
    return signals


def make_t_log_t(dt):
    def func(t):
        r = np.where(t != 0, np.abs(t), 1.0)
        return np.where(t != 0, t * np.log(r), 0.0)

    return make_signal(func, -10.0, 10.0, dt, name="t log|t|")


def bracket(ratios):
    return min(ratios), max(ratios)


def drift(coarse, fine):
    return max(abs(f / c - 1.0) for c, f in zip(coarse, fine))


# --- Refinement Tests ---

class TestRefinement:
    def test_ratio(self):
        assert refinement_ratio(1.0, 1.0) == 0.0
        assert refinement_ratio(0.0, 1.0) == math.inf
        assert refinement_ratio(2.0, 2.1) == pytest.approx(0.05)

    def test_stability_threshold(self):
        assert is_refinement_stable(1.0, 1.04)
        assert not is_refinement_stable(1.0, 1.2)


# --- Zygmund Norm Tests ---

class TestZygmundNorm:
    def test_zero_signal(self):
        f = SampledSignal(np.zeros(1024), t0=-32.0, dt=1 / 16)
        report = zygmund_norm(f, make_meyer_lp_pair())
        assert report.value == 0.0

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 3.0])
    def test_constant_signal(self, alpha):
        taper = lambda t: 0.5 * (erf((t + 400.0) / 16.0) - erf((t - 400.0) / 16.0))  # noqa: E731
        f = make_signal(taper, -512.0, 512.0, 1 / 16, name="one")
        report = zygmund_norm(f, make_meyer_lp_pair(), alpha=alpha, margin=504.0)
        assert report.components["lowpass_sup"] == pytest.approx(1.0, abs=1e-6)
        assert report.components["wavelet_sup"] <= 1e-6
        assert report.value == pytest.approx(1.0, abs=2e-6)

    def test_report_layout(self):
        f = make_family(1 / 32)[6]
        report = zygmund_norm(f, make_meyer_lp_pair(), SlowlyVaryingWeight("logpow", 1.0))
        assert set(report.components) == {"lowpass_sup", "wavelet_sup"}
        assert report.value == pytest.approx(sum(report.components.values()))
        location = report.argmax["wavelet_sup"]
        assert location["y"] in ScaleGrid.default_for(f).values
        assert abs(location["x"]) <= 24.0
        assert report.grid["weight"] == {"family": "logpow", "beta": 1.0}
        json.dumps(report.to_dict())

    def test_homogeneity_and_triangle_inequality(self):
        pair = make_meyer_lp_pair()
        f, g = make_family(1 / 32)[:2]
        base = zygmund_norm(f, pair).value
        scaled = zygmund_norm(f.with_samples(-3.0 * f.samples), pair).value
        assert scaled == pytest.approx(3.0 * base, rel=1e-12)
        total = zygmund_norm(f.with_samples(f.samples + g.samples), pair).value
        assert total <= base + zygmund_norm(g, pair).value + 1e-12

    def test_rejects_invalid_pair(self):
        pair = build_lp_pair(meyer_lowpass(0.5, 1.0), make_gaussian_derivative(1))
        f = make_family(1 / 32)[0]
        with pytest.raises(ConfigurationError, match="order 1.5"):
            zygmund_norm(f, pair, alpha=1.5)

    def test_rejects_scales_above_one(self):
        f = make_family(1 / 32)[0]
        with pytest.raises(ParameterError):
            zygmund_norm(f, make_meyer_lp_pair(), grid=ScaleGrid(0.25, 2.0, 16))

    @pytest.mark.slow
    def test_weierstrass_critical_exponent(self):
        pair = make_meyer_lp_pair()
        f = make_signal(weierstrass, -12.0, 12.0, 2.0**-11, name="weierstrass")
        fine_grid = ScaleGrid(2.0**-10, 1.0, 16)
        fine = cwt_forward(f, pair.psi, fine_grid)
        keep = fine.scales >= 2.0**-4 * (1 - 1e-12)
        coarse = Scalogram(fine.values[:, keep], f.t0, f.dt, fine.scales[keep], 16, fine.wavelet)
        coarse_grid = ScaleGrid(2.0**-4, 1.0, 16)

        def wavelet_sup(alpha, scalogram, grid):
            report = zygmund_norm(f, pair, alpha=alpha, grid=grid, scalogram=scalogram)
            return report.components["wavelet_sup"]

        at_half = wavelet_sup(0.5, fine, fine_grid) / wavelet_sup(0.5, coarse, coarse_grid)
        above = wavelet_sup(0.6, fine, fine_grid) / wavelet_sup(0.6, coarse, coarse_grid)
        assert math.isfinite(wavelet_sup(0.5, fine, fine_grid))
        assert at_half <= 1.1
        assert above >= 1.4

    @pytest.mark.slow
    def test_pair_independence(self):
        pairs = make_meyer_lp_pair(0.5, 1.0), make_meyer_lp_pair(0.4, 1.2)
        constants = []
        for dt in (1 / 32, 1 / 64):
            ratios = [
                zygmund_norm(f, pairs[0]).value / zygmund_norm(f, pairs[1]).value
                for f in make_family(dt)
            ]
            constants.append(max(max(ratios), 1.0 / min(ratios)))
        assert constants[1] == pytest.approx(constants[0], rel=0.1)

    @pytest.mark.slow
    def test_derivative_mapping(self):
        pair = make_meyer_lp_pair()
        constants = []
        for dt in (1 / 32, 1 / 64):
            ratios = [
                zygmund_norm(derivative(f), pair, alpha=-0.5).value
                / zygmund_norm(f, pair, alpha=0.5).value
                for f in make_family(dt)
            ]
            constants.append(max(ratios))
        assert constants[1] == pytest.approx(constants[0], rel=0.1)

    @pytest.mark.slow
    def test_bessel_mapping(self):
        pair = make_meyer_lp_pair()
        brackets = []
        for dt in (1 / 32, 1 / 64):
            ratios = [
                zygmund_norm(bessel_potential(f, 0.5), pair, alpha=0.0).value
                / zygmund_norm(f, pair, alpha=0.5).value
                for f in make_family(dt)
            ]
            brackets.append(bracket(ratios))
        assert 0 < brackets[0][0] <= brackets[0][1] < math.inf
        assert drift(brackets[0], brackets[1]) < 0.1


# --- Hoelder Norm Tests ---

class TestHolderNorm:
    def test_zero_signal(self):
        f = SampledSignal(np.zeros(512), t0=-16.0, dt=1 / 16)
        assert holder_norm(f).value == 0.0

    def test_identity_function(self):
        f = make_signal(lambda t: t, -10.0, 10.0, 1 / 16, name="t")
        report = holder_norm(f, alpha=0.5)
        assert report.components["difference_sup"] == pytest.approx(1.0, rel=1e-12)
        assert report.argmax["difference_sup"]["h"] == pytest.approx(1.0)
        assert report.components["derivative_0_sup"] == pytest.approx(2.0)

    def test_integer_alpha_uses_lipschitz_quotient(self):
        f = make_signal(lambda t: t, -10.0, 10.0, 1 / 16, name="t")
        report = holder_norm(f, alpha=1.0)
        assert report.grid["order"] == 0
        assert report.grid["exponent"] == 1.0
        assert report.components["difference_sup"] == pytest.approx(1.0, rel=1e-9)

    @pytest.mark.parametrize("alpha", [0.0, -0.5, math.nan])
    def test_rejects_nonpositive_alpha(self, alpha):
        f = make_signal(lambda t: t, -10.0, 10.0, 1 / 16)
        with pytest.raises(DomainError):
            holder_norm(f, alpha=alpha)

    def test_cusp_is_critical_at_one_half(self):
        def cusp(t):
            return np.sqrt(np.abs(np.sin(t)))

        coarse_f = make_signal(cusp, -10.0, 10.0, 1 / 256, name="cusp")
        fine_f = make_signal(cusp, -10.0, 10.0, 1 / 4096, name="cusp")
        growth = {
            alpha: holder_norm(fine_f, alpha=alpha).components["difference_sup"]
            / holder_norm(coarse_f, alpha=alpha).components["difference_sup"]
            for alpha in (0.5, 0.6)
        }
        assert growth[0.5] == pytest.approx(1.0, abs=0.02)
        assert growth[0.6] >= 1.25

    def test_lag_stride_is_recorded(self, caplog):
        f = make_signal(np.sin, -10.0, 10.0, 1 / 64)
        with caplog.at_level(logging.WARNING, logger="zygmund.regularity.norms"):
            report = holder_norm(f, alpha=0.5, max_pairs=10_000)
        assert report.grid["lag_stride"] > 1
        assert report.grid["n_lags"] < 64 + 1 + 64
        assert "lag stride" in caplog.text

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("weight", ["const", "logpow:1"])
    def test_equivalent_to_zygmund_norm(self, alpha, weight):
        pair = make_meyer_lp_pair()
        weight = SlowlyVaryingWeight.from_spec(weight)
        brackets = []
        for dt in (1 / 32, 1 / 64):
            ratios = [
                holder_norm(f, weight, alpha).value / zygmund_norm(f, pair, weight, alpha).value
                for f in make_family(dt)
            ]
            brackets.append(bracket(ratios))
        assert drift(brackets[0], brackets[1]) < 0.1


# --- Second Difference Tests ---

class TestSecondDifferenceNorm:
    def test_affine_signal(self):
        f = make_signal(lambda t: 2.0 * t + 1.0, -10.0, 10.0, 1 / 16)
        report = second_difference_norm(f)
        assert report.components["difference_sup"] <= 1e-10

    def test_quadratic_signal(self):
        f = make_signal(lambda t: t**2, -10.0, 10.0, 1 / 16)
        report = second_difference_norm(f)
        assert report.components["difference_sup"] == pytest.approx(2.0, rel=1e-9)
        assert report.argmax["difference_sup"]["h"] == pytest.approx(1.0)

    def test_kink(self):
        f = make_signal(lambda t: np.abs(t - 0.5), -10.0, 10.0, 1 / 16)
        report = second_difference_norm(f)
        assert report.components["difference_sup"] == pytest.approx(2.0, rel=1e-9)
        assert report.argmax["difference_sup"]["t"] == pytest.approx(0.5)

    def test_rejects_negative_order(self):
        with pytest.raises(ParameterError):
            second_difference_norm(make_signal(np.sin, -10.0, 10.0, 1 / 16), p=-1)

    def test_zygmund_class_is_wider_than_lipschitz(self):
        coarse, fine = make_t_log_t(1 / 16), make_t_log_t(1 / 4096)
        second = [second_difference_norm(f).components["difference_sup"] for f in (coarse, fine)]
        first = [holder_norm(f, alpha=1.0).components["difference_sup"] for f in (coarse, fine)]
        assert second[0] == pytest.approx(2 * math.asinh(1.0), rel=1e-3)
        assert second[1] == pytest.approx(second[0], rel=1e-3)
        assert first[1] >= 2.0 * first[0]


# --- Seminorm Tests ---

class TestSeminorms:
    def test_schwartz_zero(self):
        assert schwartz_seminorm(SampledSignal(np.zeros(64)), 3, 2) == 0.0

    def test_schwartz_gaussian(self):
        f = make_signal(lambda t: np.exp(-0.5 * t**2), -16.0, 16.0, 1 / 64)
        assert schwartz_seminorm(f, 0, 0) == pytest.approx(1.0)
        assert schwartz_seminorm(f, 2, 0) == pytest.approx(2.0 * math.exp(-0.5), rel=1e-9)

    def test_schwartz_rejects_negative_indices(self):
        with pytest.raises(ParameterError):
            schwartz_seminorm(SampledSignal(np.zeros(64)), -1, 0)

    def test_halfspace_zero(self):
        scalogram = Scalogram(np.zeros((64, 5)), 0.0, 0.25, 2.0 ** -np.arange(5), 4)
        assert halfspace_seminorm(scalogram, 3, 2, 1, 1) == 0.0

    def test_halfspace_band_bumps(self):
        f = make_signal(
            lambda t: np.exp(-0.5 * t**2) * np.cos(1.5 * t), -32.0, 32.0, 1 / 16, name="packet"
        )
        scalogram = cwt_forward(f, make_band_bump(1.0, 2.0), ScaleGrid(0.25, 1.0, 8))
        value = halfspace_seminorm(scalogram, 3, 2, 1, 1)
        assert math.isfinite(value) and value > 0
        doubled = scalogram.scaled(2.0)
        assert halfspace_seminorm(doubled, 3, 2, 1, 1) == pytest.approx(2.0 * value, rel=1e-12)

    def test_halfspace_needs_three_scales(self):
        scalogram = Scalogram(np.ones((64, 2)), 0.0, 0.25, np.array([1.0, 0.5]), 4)
        with pytest.raises(ParameterError):
            halfspace_seminorm(scalogram, 0, 0, 1, 0)
