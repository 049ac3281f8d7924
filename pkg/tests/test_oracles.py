#!/usr/bin/env python3
# tests/test_oracles.py

import math

import numpy as np
import pytest

from constants import METHOD_QUADRATURE
from errors import DomainError, NumericConvergenceError, UnsupportedComponentError
from models.correlation import CFComponentSpec
from models.kinematics import RotationKinematics
from models.oracles import DirectionGrid, RegulatorLadder
from services.em_correlations import cf_continuous, cf_discrete
from services.oracles import (
    SCALAR, abel_summed_series, damped_mode_sum_cf, regulated_cf_quadrature, regulated_radial_integral,
)
from services.scalar_correlations import scalar_cf_continuous, scalar_cf_discrete
from services.spectral_regularization import closed_form_sum
from utils.numeric_utils import richardson_extrapolate

E11 = CFComponentSpec.parse("E1E1")


def test_regulator_ladder_validation():
    ladder = RegulatorLadder.scaled((0.1, 0.05, 0.025), 2.0)
    assert ladder.values == (0.2, 0.1, 0.05)
    assert len(ladder) == 3
    with pytest.raises(DomainError):
        RegulatorLadder((0.1, 0.2, 0.05))
    with pytest.raises(DomainError):
        RegulatorLadder((0.1, 0.05))
    with pytest.raises(DomainError):
        RegulatorLadder((0.1, 0.05, 0.025), extrapolation_order=3)


def test_direction_grid_weights():
    grid = DirectionGrid.gauss_product(8, 16)
    assert grid.size == 128
    assert float(np.sum(grid.weights)) == pytest.approx(4.0 * math.pi, rel=1e-14)
    directions = grid.directions()
    np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0, atol=1e-14)
    # degree-2 polynomials integrate exactly
    assert float(np.sum(grid.weights * directions[:, 2] ** 2)) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-13)


def test_richardson_removes_polynomial_error():
    hs = [0.1, 0.05, 0.025]
    values = [2.0 + 3.0 * h + 5.0 * h * h for h in hs]
    estimate, residual = richardson_extrapolate(hs, values, 2)
    assert estimate == pytest.approx(2.0, abs=1e-12)
    assert residual >= 0.0


def test_richardson_flags_growing_steps():
    with pytest.raises(NumericConvergenceError):
        richardson_extrapolate([0.1, 0.05, 0.025], [1.0, 1.1, 0.5], 2)


def test_regulated_radial_integral_matches_laplace_form():
    eps, X = 0.01, 2.0
    expected = (6.0 / (eps - 1j * X) ** 4).real
    assert regulated_radial_integral(3, X, eps) == pytest.approx(expected, rel=1e-6)
    assert regulated_radial_integral(3, 0.0, 0.1) == pytest.approx(6.0 / 0.1 ** 4, rel=1e-10)
    assert regulated_radial_integral(1, 1.5, 0.05) == pytest.approx((1.0 / (0.05 - 1.5j) ** 2).real, rel=1e-6)


@pytest.mark.parametrize("p", [1, 3])
@pytest.mark.parametrize("eps", [0.5, 0.05, 0.01])
@pytest.mark.parametrize("X", [-2.9, -0.4, 0.03, 1.0, 3.5])
def test_regulated_radial_integral_across_regulators(p, eps, X):
    expected = (math.factorial(p) / (eps - 1j * X) ** (p + 1)).real
    absolute = math.factorial(p) / eps ** (p + 1)
    assert regulated_radial_integral(p, X, eps) == pytest.approx(expected, rel=1e-6, abs=1e-14 * absolute)


def test_regulated_radial_integral_far_from_the_peak():
    # oscillation X / eps = 290: the integral is ~1e-10 of its absolute value
    eps, X = 0.01, -2.9
    expected = (6.0 / (eps - 1j * X) ** 4).real
    assert regulated_radial_integral(3, X, eps) == pytest.approx(expected, rel=1e-5)


def test_regulated_scalar_at_rest():
    result = regulated_cf_quadrature(SCALAR, 0.0, 1.0, RotationKinematics(omega=1.0, r=0.0))
    assert result.method == METHOD_QUADRATURE
    assert result.value == pytest.approx(-1.0 / math.pi, rel=1e-4)


def test_regulated_quadrature_rejects_coincident_times_and_unrotated_components(kin):
    with pytest.raises(DomainError):
        regulated_cf_quadrature(E11, 0.5, 0.5, kin)
    with pytest.raises(UnsupportedComponentError):
        regulated_cf_quadrature(CFComponentSpec.parse("E2E2"), 0.0, 1.0, kin, rotated=False)


@pytest.mark.parametrize("p,F,expected", [(3, math.pi, 0.125), (1, math.pi / 2.0, -0.5)])
def test_abel_summation_worked_values(p, F, expected):
    assert abel_summed_series(p, F) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("p", [1, 3])
@pytest.mark.parametrize("F", [0.4, 1.7, 3.0, 5.0])
def test_abel_summation_matches_closed_form(p, F):
    closed = float(closed_form_sum(p, F))
    assert abel_summed_series(p, F) == pytest.approx(closed, rel=1e-6, abs=1e-6)


def test_abel_summation_rejects_poles():
    with pytest.raises(DomainError):
        abel_summed_series(3, 2.0 * math.pi)


@pytest.mark.slow
def test_regulated_quadrature_matches_closed_form_e11(kin):
    closed = cf_continuous(E11, 0.0, 1.0, kin).value
    oracle = regulated_cf_quadrature(E11, 0.0, 1.0, kin)
    assert oracle.value == pytest.approx(closed, rel=5e-3)
    assert oracle.metadata["ladder"]["extrapolation_order"] == 2


@pytest.mark.slow
def test_unrotated_brace_gives_same_e11(kin):
    closed = cf_continuous(E11, 0.0, 1.0, kin).value
    oracle = regulated_cf_quadrature(E11, 0.0, 1.0, kin, rotated=False)
    assert oracle.value == pytest.approx(closed, rel=5e-3)


@pytest.mark.slow
def test_regulated_quadrature_matches_scalar_worked_value(kin):
    oracle = regulated_cf_quadrature(SCALAR, 0.0, 1.0, kin)
    assert oracle.value == pytest.approx(scalar_cf_continuous(0.0, 1.0, kin).value, rel=5e-3)


@pytest.mark.slow
def test_damped_mode_sum_matches_discrete_e11(kin):
    _, finite = cf_discrete(E11, 0.0, 0.25, kin)
    oracle = damped_mode_sum_cf(E11, 0.0, 0.25, kin)
    assert oracle.value == pytest.approx(finite.value, rel=1e-4)


@pytest.mark.slow
def test_damped_mode_sum_matches_discrete_scalar(kin):
    tau2 = math.pi / (2.0 * kin.omega * kin.gamma)
    _, finite = scalar_cf_discrete(0.0, tau2, kin)
    oracle = damped_mode_sum_cf(SCALAR, 0.0, tau2, kin)
    assert oracle.value == pytest.approx(finite.value, rel=1e-4)


def test_damped_mode_sum_stays_finite_at_coincidence(kin):
    _, finite = cf_discrete(E11, 0.3, 0.3, kin)
    oracle = damped_mode_sum_cf(E11, 0.3, 0.3, kin)
    assert oracle.value == pytest.approx(finite.value, rel=1e-4)


def _random_cases(seed: int, count: int):
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        omega = rng.uniform(0.5, 2.0)
        beta = rng.uniform(0.05, 0.9)
        tau2 = rng.uniform(0.2, 2.0)
        cases.append((RotationKinematics(omega=omega, r=beta / omega), tau2))
    return cases


@pytest.mark.slow
@pytest.mark.parametrize("kin_case,tau2", _random_cases(20240611, 6))
def test_regulated_quadrature_over_random_kinematics(kin_case, tau2):
    closed = cf_continuous(E11, 0.0, tau2, kin_case).value
    oracle = regulated_cf_quadrature(E11, 0.0, tau2, kin_case)
    assert oracle.value == pytest.approx(closed, rel=5e-3)
    # later time first
    backward = regulated_cf_quadrature(E11, tau2, 0.0, kin_case)
    assert backward.value == pytest.approx(cf_continuous(E11, tau2, 0.0, kin_case).value, rel=5e-3)


@pytest.mark.slow
@pytest.mark.parametrize("label", ["E1E1", "E2E2", "E3E3", "E1E2", "H1H1"])
def test_regulated_quadrature_for_every_component(label, kin):
    spec = CFComponentSpec.parse(label)
    floor = 1e-3 * abs(cf_continuous(E11, 0.0, 0.8, kin).value)
    closed = cf_continuous(spec, 0.0, 0.8, kin).value
    oracle = regulated_cf_quadrature(spec, 0.0, 0.8, kin)
    assert oracle.metadata["component"] == label
    assert oracle.value == pytest.approx(closed, rel=5e-3, abs=floor)


@pytest.mark.slow
@pytest.mark.parametrize("label", ["E2E2", "E3E3", "E1E2", "H1H1"])
def test_damped_mode_sum_for_every_component(label, kin):
    spec = CFComponentSpec.parse(label)
    _, reference = cf_discrete(E11, 0.0, 0.25, kin)
    _, finite = cf_discrete(spec, 0.0, 0.25, kin)
    oracle = damped_mode_sum_cf(spec, 0.0, 0.25, kin)
    assert oracle.value == pytest.approx(finite.value, rel=1e-4, abs=1e-5 * abs(reference.value))
