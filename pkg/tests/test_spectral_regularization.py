#!/usr/bin/env python3
# tests/test_spectral_regularization.py

import math

import numpy as np
import pytest

from errors import DomainError, NumericConvergenceError, UsageError
from models.kinematics import RotationKinematics
from services.spectral_regularization import (
    abel_plana_check, blackbody_energy_density, closed_form_sum, dimensionless_thermal_integral,
    energy_density_from_mode_sum, energy_density_spectral_route, planck_comparison, principal_phase,
    reg_energy_density, regularized_sum, regularized_sum_pole_series, t_rot, thermal_integral,
    thermal_part, thermal_weight_spectrum, truncated_sum,
)


def test_closed_form_values():
    assert closed_form_sum(3, math.pi) == pytest.approx(0.125, rel=1e-15)
    assert closed_form_sum(1, math.pi / 2.0) == pytest.approx(-0.5, rel=1e-15)
    with pytest.raises(UsageError):
        closed_form_sum(2, 1.0)


def test_thermal_part_limits():
    assert thermal_part(3, 0.0) == pytest.approx(1.0 / 120.0, rel=1e-13)
    assert thermal_part(1, 0.0) == pytest.approx(-1.0 / 12.0, rel=1e-13)
    assert thermal_part(3, math.pi) == pytest.approx(0.125 - 6.0 / math.pi ** 4, rel=1e-13)
    assert thermal_part(3, math.pi) == pytest.approx(0.063411, rel=1e-5)


@pytest.mark.parametrize("p", [1, 3])
def test_thermal_part_is_continuous_at_series_radius(p):
    below = thermal_part(p, 0.5 - 1e-9)
    above = thermal_part(p, 0.5 + 1e-9)
    assert above == pytest.approx(below, rel=1e-8)


@pytest.mark.parametrize("p", [1, 3])
def test_thermal_part_is_periodic_and_even(p):
    F = np.array([0.2, 1.3, 2.9])
    np.testing.assert_allclose(thermal_part(p, F + 2.0 * math.pi), thermal_part(p, F), rtol=1e-9)
    np.testing.assert_allclose(thermal_part(p, -F), thermal_part(p, F), rtol=1e-12)


def test_principal_phase_range():
    reduced = principal_phase(np.array([7.0, -7.0, 3.0]))
    assert np.all(np.abs(reduced) <= math.pi)
    assert reduced[0] == pytest.approx(7.0 - 2.0 * math.pi)


@pytest.mark.parametrize("p", [1, 3])
@pytest.mark.parametrize("F", [0.2, 1.0, 2.5, math.pi, 5.5])
def test_split_adds_up(p, F):
    split = regularized_sum(p, F)
    assert split.vacuum_value + split.thermal_value == pytest.approx(split.total_closed_form, rel=1e-10)
    assert split.thermal_sign == (1 if p == 3 else -1)


@pytest.mark.parametrize("F", [0.0, 2.0 * math.pi, -4.0 * math.pi])
def test_split_rejects_poles(F):
    with pytest.raises(DomainError):
        regularized_sum(3, F)


@pytest.mark.parametrize("p", [1, 3])
@pytest.mark.parametrize("F", [0.3, 1.0, math.pi, 4.0, 5.9])
def test_pole_series_matches_closed_form(p, F):
    assert regularized_sum_pole_series(p, F) == pytest.approx(float(closed_form_sum(p, F)), rel=1e-11)


def test_pole_series_domain():
    with pytest.raises(DomainError):
        regularized_sum_pole_series(3, 2.0 * math.pi)


def test_truncated_sum():
    assert truncated_sum(3, 0.0, 3) == 36.0
    assert truncated_sum(1, math.pi, 2) == pytest.approx(1.0)
    with pytest.raises(UsageError):
        truncated_sum(3, 0.0, 0)


def test_thermal_integrals_at_rotation_temperature():
    T = 1.0 / (2.0 * math.pi)
    assert thermal_integral(3, T, 0.0) == pytest.approx(1.0 / 120.0, rel=1e-9)
    assert thermal_integral(1, T, 0.0) == pytest.approx(1.0 / 12.0, rel=1e-9)
    assert thermal_integral(3, 0.0, 0.5) == 0.0
    with pytest.raises(NumericConvergenceError):
        dimensionless_thermal_integral(3, 1.0)


def test_rotation_temperature_si(si):
    temperature = t_rot(1e11, si)
    assert temperature.t_rot == pytest.approx(0.121566, rel=1e-5)
    assert temperature.units == "si"


def test_energy_density_at_unit_temperature():
    kin = RotationKinematics(omega=2.0 * math.pi, r=0.0)
    density = reg_energy_density(kin)
    assert density.t_rot == pytest.approx(1.0)
    assert density.anisotropy_factor == pytest.approx(2.0)
    assert density.value == pytest.approx(2.0 * math.pi ** 2 / 15.0, rel=1e-12)
    assert blackbody_energy_density(1.0) == pytest.approx(math.pi ** 2 / 15.0, rel=1e-12)


def test_energy_density_routes_agree(kin):
    density = reg_energy_density(kin).value
    assert energy_density_spectral_route(kin) == pytest.approx(density, rel=1e-8)
    assert energy_density_from_mode_sum(kin) == pytest.approx(density, rel=1e-10)


def test_energy_density_vanishes_without_rotation():
    kin = RotationKinematics(omega=0.0, r=1.0)
    assert reg_energy_density(kin).value == 0.0
    assert energy_density_spectral_route(kin) == 0.0


def test_abel_plana_identity():
    direct, identity = abel_plana_check(0.5)
    assert identity == pytest.approx(direct, rel=1e-8)
    direct, identity = abel_plana_check(0.7, p=1)
    assert identity == pytest.approx(direct, rel=1e-8)


def test_planck_comparison_sides_agree():
    comparison = planck_comparison(1.0, 0.5)
    assert comparison.relative_difference < 1e-8
    assert comparison.thermal_term != 0.0
    zero = planck_comparison(0.0, 0.5)
    assert zero.thermal_term == 0.0
    with pytest.raises(DomainError):
        planck_comparison(0.0, 0.0)


def test_spectrum_rows(kin):
    rows = thermal_weight_spectrum(kin, 4)
    assert [row.n for row in rows] == [1, 2, 3, 4]
    assert rows[0].occupation == pytest.approx(1.0 / math.expm1(2.0 * math.pi), rel=1e-14)
    assert rows[1].omega_n == pytest.approx(2.0 * kin.omega)
    assert rows[0].zero_point_weight > rows[0].thermal_weight
    with pytest.raises(UsageError):
        thermal_weight_spectrum(kin, 0)
