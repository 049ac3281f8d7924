#!/usr/bin/env python3
# tests/test_monte_carlo.py

import math

import numpy as np
import pytest

from config.settings import MonteCarloSettings, RunConfig
from constants import METHOD_MONTE_CARLO
from errors import DomainError
from models.correlation import CFComponentSpec
from models.oracles import DirectionGrid, McFieldSpec
from services.em_correlations import cf_discrete
from services.monte_carlo import MonteCarloSampler, mc_zero_point_cf

E11 = CFComponentSpec.parse("E1E1")
SIGMAS = 4.0


@pytest.fixture
def small_mc():
    return McFieldSpec(n_max=4, direction_grid=DirectionGrid.gauss_product(4, 8), ensembles=2000,
                       seed=20240611, chunk_size=250)


@pytest.fixture
def sampler(small_mc):
    return MonteCarloSampler(small_mc)


def test_mode_count(sampler, small_mc):
    assert sampler.n_modes == small_mc.n_modes == 4 * 32 * 2


def test_expected_value_equals_truncated_discrete_on_grid(sampler, small_mc, kin):
    _, matched = cf_discrete(E11, 0.0, 0.7, kin, n_max=small_mc.n_max, grid=small_mc.direction_grid)
    assert sampler.expected_value(E11, 0.0, 0.7, kin) == pytest.approx(matched.value, rel=1e-10)


def test_out_of_plane_component_has_zero_mean(sampler, kin):
    scale = abs(sampler.expected_value(E11, -0.125, 0.125, kin))
    expected = sampler.expected_value(CFComponentSpec.parse("E1E3"), -0.125, 0.125, kin)
    assert abs(expected) < 1e-12 * scale
    estimate = sampler.estimate(CFComponentSpec.parse("E1E3"), -0.125, 0.125, kin)
    assert abs(estimate.value) < SIGMAS * estimate.error_estimate


def test_cross_components_cancel_at_symmetric_times(sampler, kin):
    scale = abs(sampler.expected_value(E11, -0.125, 0.125, kin))
    forward = sampler.expected_value(CFComponentSpec.parse("E1E2"), -0.125, 0.125, kin)
    backward = sampler.expected_value(CFComponentSpec.parse("E2E1"), -0.125, 0.125, kin)
    assert abs(forward + backward) < 1e-12 * scale

    total = (sampler.sample_products(CFComponentSpec.parse("E1E2"), -0.125, 0.125, kin)
             + sampler.sample_products(CFComponentSpec.parse("E2E1"), -0.125, 0.125, kin))
    error = np.std(total, ddof=1) / math.sqrt(total.size)
    assert abs(np.mean(total)) < SIGMAS * error


def test_estimate_agrees_with_exact_ensemble_mean(sampler, kin):
    result = sampler.estimate(E11, -0.125, 0.125, kin)
    assert result.method == METHOD_MONTE_CARLO
    assert result.error_estimate > 0.0
    expected = result.metadata["expected_value"]
    assert abs(result.value - expected) < SIGMAS * result.error_estimate


def test_same_seed_gives_same_estimate(small_mc, kin):
    first = MonteCarloSampler(small_mc).estimate(E11, 0.0, 0.3, kin)
    second = MonteCarloSampler(small_mc).estimate(E11, 0.0, 0.3, kin)
    assert first.value == second.value
    assert first.error_estimate == second.error_estimate


def test_standard_error_shrinks_with_ensemble_size(small_mc, kin):
    def error(ensembles):
        mc = McFieldSpec(n_max=small_mc.n_max, direction_grid=small_mc.direction_grid, ensembles=ensembles,
                         seed=small_mc.seed, chunk_size=small_mc.chunk_size)
        return MonteCarloSampler(mc).estimate(E11, 0.0, 0.3, kin).error_estimate

    assert error(1000) / error(4000) == pytest.approx(2.0, rel=0.2)


def test_phase_correlator_moments(sampler):
    check = sampler.phase_correlator_check(n_modes=3, ensembles=10000)
    means = np.array(check["means"])
    np.testing.assert_allclose(means, 0.5 * np.eye(3), atol=0.05)
    assert check["ensembles"] == 10000
    with pytest.raises(DomainError):
        sampler.phase_correlator_check(n_modes=0)


def test_mc_zero_point_cf_uses_configured_field(kin):
    config = RunConfig(monte_carlo=MonteCarloSettings(n_max=2, n_theta=2, n_phi=4, ensembles=300, chunk_size=100))
    result = mc_zero_point_cf("E1E1", 0.0, 0.3, kin, config=config)
    assert result.metadata["mc"]["directions"] == 8
    assert result.metadata["mc"]["ensembles"] == 300
    assert result.metadata["mc"]["seed"] == config.seed


@pytest.mark.slow
def test_default_field_matches_truncated_discrete(kin, config):
    settings = config.monte_carlo
    grid = DirectionGrid.gauss_product(settings.n_theta, settings.n_phi)
    result = mc_zero_point_cf(E11, -0.125, 0.125, kin, config=config)
    _, matched = cf_discrete(E11, -0.125, 0.125, kin, config, n_max=settings.n_max, grid=grid)
    assert result.metadata["expected_value"] == pytest.approx(matched.value, rel=1e-9)
    assert abs(result.value - matched.value) < SIGMAS * result.error_estimate
