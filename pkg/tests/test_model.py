"""Velocity laws, lane-change rates, and model admissibility checks."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lanefv import (
    ModelSpec,
    constant_rate,
    custom_velocity,
    greenshields,
    indicator_rate,
    source_rate,
    validate_model,
    zero_rate,
)


class TestGreenshields:
    @pytest.mark.parametrize("u,expected", [(0.0, 1.0), (1.0, 0.0), (0.6, 0.4)])
    def test_affine_values(self, u, expected):
        law = greenshields(1.0, 1.0)
        assert_allclose(law.evaluate(u), expected, rtol=1e-15)

    def test_scaled_parameters(self):
        law = greenshields(2.0, 0.5)
        assert law.evaluate(0.25) == 1.0
        assert law.derivative(0.1) == -4.0

    @pytest.mark.parametrize("v_free,rho_ref", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
    def test_rejects_nonpositive(self, v_free, rho_ref):
        with pytest.raises(ValueError):
            greenshields(v_free, rho_ref)

    def test_flux_and_max_speed(self):
        law = greenshields(1.0, 1.0)
        assert_allclose(law.flux(0.5), 0.25, rtol=1e-15)
        assert_allclose(law.max_speed(1.0), 1.0, rtol=1e-12)

    def test_stationary_point_closed_form(self):
        assert greenshields(1.0, 1.0).flux_stationary_points(1.0) == [0.5]
        assert greenshields(1.0, 1.0).flux_stationary_points(0.4) == []
        assert greenshields(3.0, 2.0).flux_stationary_points(2.0) == [1.0]


class TestCustomVelocity:
    def test_sampled_stationary_point(self):
        # f = u(1-u)^2 peaks at u = 1/3
        law = custom_velocity(
            lambda u: (1.0 - np.asarray(u, dtype=np.float64)) ** 2,
            lambda u: -2.0 * (1.0 - np.asarray(u, dtype=np.float64)),
        )
        roots = law.flux_stationary_points(0.9)
        assert any(abs(r - 1.0 / 3.0) < 1e-9 for r in roots)


class TestLaneChangeRates:
    def test_indicator_support(self):
        rate = indicator_rate(-2.0, 2.0, 1.0)
        assert rate(0.3, 0.4, 0.0) == 1.0
        assert rate(0.3, 0.4, 3.0) == 0.0
        assert rate.h_sup == 1.0
        assert rate.h_lip1 == 0.0 and rate.h_lip2 == 0.0

    def test_indicator_vectorizes(self):
        rate = indicator_rate(-1.0, 1.0, 2.0)
        x = np.array([-2.0, 0.0, 0.5, 1.5])
        assert rate(0.1, 0.1, x).tolist() == [0.0, 2.0, 2.0, 0.0]

    def test_constant_and_zero(self):
        assert constant_rate(0.7)(0.1, 0.9, -3.0) == 0.7
        assert zero_rate()(0.5, 0.5, 0.0) == 0.0
        assert zero_rate().h_sup == 0.0

    def test_rejects_negative_scale(self):
        with pytest.raises(ValueError):
            constant_rate(-1.0)
        with pytest.raises(ValueError):
            indicator_rate(-2.0, 2.0, -0.5)


class TestSourceRate:
    def test_balanced_lanes_give_zero(self):
        rate = indicator_rate(-2.0, 2.0, 1.0)
        assert source_rate(0.5, 0.5, 0.5, 0.5, 0.0, (1.0, 1.0), rate) == 0.0
        # balance is in normalized densities
        assert source_rate(0.5, 0.25, 0.5, 0.25, 0.0, (1.0, 0.5), rate) == 0.0

    def test_figure_setup_values(self):
        rate = indicator_rate(-2.0, 2.0, 1.0)
        assert source_rate(0.6, 0.4, 0.6, 0.4, 0.0, (1.0, 1.0), rate) == pytest.approx(-0.2, rel=1e-15)
        assert source_rate(0.6, 0.4, 0.6, 0.4, 3.0, (1.0, 1.0), rate) == 0.0

    def test_lipschitz_in_densities(self):
        # slope bounded by sup H * max(1/m1, 1/m2)
        rate = indicator_rate(-2.0, 2.0, 1.0)
        caps = (1.0, 0.8)
        bound = rate.h_sup * max(1.0 / caps[0], 1.0 / caps[1])
        rng = np.random.default_rng(5)
        for _ in range(200):
            r1, r2 = rng.uniform(0.0, 1.0, 2) * caps
            d = rng.uniform(1e-6, 1e-3)
            base = source_rate(r1, r2, r1, r2, 0.0, caps, rate)
            bumped = source_rate(min(r1 + d, caps[0]), r2, r1, r2, 0.0, caps, rate)
            assert abs(bumped - base) <= bound * d + 1e-12


class TestValidateModel:
    def test_default_setup_is_clean(self):
        law = greenshields(1.0, 1.0)
        spec = ModelSpec(law, law, (1.0, 1.0), indicator_rate(-2.0, 2.0, 1.0), 0.1)
        assert validate_model(spec) == []

    def test_increasing_velocity_is_flagged(self):
        bad = custom_velocity(
            lambda u: np.asarray(u, dtype=np.float64),
            lambda u: np.ones_like(np.asarray(u, dtype=np.float64)),
        )
        spec = ModelSpec(bad, greenshields(1.0, 1.0), (1.0, 1.0), zero_rate(), 0.1)
        messages = validate_model(spec)
        assert any("V' > 0" in m and "lane 1" in m for m in messages)

    def test_negative_speed_is_flagged(self):
        # rho_ref below capacity drives the affine law negative
        spec = ModelSpec(
            greenshields(1.0, 0.5), greenshields(1.0, 1.0), (1.0, 1.0), zero_rate(), 0.1
        )
        messages = validate_model(spec)
        assert any("negative speed" in m for m in messages)

    def test_negative_rate_is_flagged(self):
        law = greenshields(1.0, 1.0)
        bad = zero_rate()
        object.__setattr__(bad, "rate", lambda w1, w2, x: np.full_like(np.asarray(x, dtype=np.float64), -1.0))
        spec = ModelSpec(law, law, (1.0, 1.0), bad, 0.1)
        messages = validate_model(spec)
        assert any("H < 0" in m for m in messages)

    def test_understated_sup_is_flagged(self):
        law = greenshields(1.0, 1.0)
        rate = indicator_rate(-2.0, 2.0, 1.0)
        object.__setattr__(rate, "h_sup", 0.5)
        spec = ModelSpec(law, law, (1.0, 1.0), rate, 0.1)
        messages = validate_model(spec)
        assert any("exceeds declared bound" in m for m in messages)

    def test_equilibrium_source_vanishes(self):
        # equal normalized densities: exchange is identically zero
        rate = constant_rate(1.0)
        caps = (1.0, 0.5)
        for r in np.linspace(0.0, 1.0, 11):
            assert source_rate(r, 0.5 * r, r, 0.5 * r, 0.0, caps, rate) == 0.0
