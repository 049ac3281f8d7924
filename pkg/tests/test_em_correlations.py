#!/usr/bin/env python3
# tests/test_em_correlations.py

import math

import pytest

from constants import CONVENTION_RIEMANN, METHOD_CLOSED_FORM, METHOD_QUADRATURE
from config.settings import NormalizationSettings, RunConfig
from errors import DivergenceError, DomainError, UnsupportedComponentError
from models.correlation import CFComponentSpec
from models.kinematics import RotationKinematics
from services.em_correlations import (
    ZERO_COMPONENTS, cf_continuous, cf_discrete, cf_e11_coincident, coincident_sign_sweep,
    discrete_phase, e11_explicit_closed_form, mode_density_normalization, phase_kinks,
)
from services.spectral_regularization import thermal_part

E11 = CFComponentSpec.parse("E1E1")


def test_component_parsing():
    spec = CFComponentSpec.parse(" h1e2 ")
    assert spec.label == "H1E2"
    assert spec.swapped().label == "E2H1"
    with pytest.raises(DomainError):
        CFComponentSpec.parse("E4E1")


def test_e11_with_rotating_axes_at_rest():
    # the detector sits still but its axes turn by delta
    result = cf_continuous(E11, 0.0, 1.0, RotationKinematics(omega=1.0, r=0.0))
    assert result.method == METHOD_CLOSED_FORM
    assert result.error_estimate == 0.0
    assert result.value == pytest.approx(4.0 * math.cos(1.0) / math.pi, rel=1e-13)


def test_coincident_limit_values():
    assert cf_e11_coincident(RotationKinematics(omega=1.0, r=0.0), 1.0).value == pytest.approx(4.0 / math.pi,
                                                                                              rel=1e-13)
    assert cf_e11_coincident(RotationKinematics(omega=1.0, r=0.5), 1.0).value == pytest.approx(2.2635, rel=2e-4)
    with pytest.raises(DivergenceError):
        cf_e11_coincident(RotationKinematics(omega=1.0, r=0.5), 0.0)


def test_coincident_limit_is_small_angle_limit_of_pipeline():
    kin = RotationKinematics(omega=1e-6, r=0.5e6)
    pipeline = cf_continuous(E11, 0.0, 1.0 / kin.gamma, kin).value
    assert pipeline == pytest.approx(cf_e11_coincident(kin, 1.0).value, rel=1e-6)


def test_coincident_sign_sweep_stays_positive():
    rows = coincident_sign_sweep([0.0, 0.3, 0.6, 0.9])
    assert [row["beta"] for row in rows] == [0.0, 0.3, 0.6, 0.9]
    assert all(row["positive"] for row in rows)


@pytest.mark.parametrize("omega,r,tau2", [(1.0, 0.5, 1.0), (0.7, 1.2, 0.4), (2.0, 0.45, 2.5), (1.3, 0.1, 0.3)])
def test_explicit_closed_form_matches_monomial_pipeline(omega, r, tau2):
    kin = RotationKinematics(omega=omega, r=r)
    pipeline = cf_continuous(E11, 0.0, tau2, kin).value
    assert e11_explicit_closed_form(0.0, tau2, kin) == pytest.approx(pipeline, rel=1e-12)


def test_cross_components_are_antisymmetric(kin):
    forward = cf_continuous(CFComponentSpec.parse("E1E2"), 0.0, 0.8, kin).value
    backward = cf_continuous(CFComponentSpec.parse("E2E1"), 0.0, 0.8, kin).value
    assert forward != 0.0
    assert backward == pytest.approx(-forward, rel=1e-15)


@pytest.mark.parametrize("label", ZERO_COMPONENTS)
def test_out_of_plane_cross_components_vanish(label, kin):
    spec = CFComponentSpec.parse(label)
    assert cf_continuous(spec, 0.0, 0.8, kin).value == 0.0
    _, finite = cf_discrete(spec, 0.0, 0.8, kin)
    assert finite.value == 0.0


@pytest.mark.parametrize("label", ["E1E1", "E2E2", "E3E3", "E1E2", "H1H1"])
@pytest.mark.parametrize("shift", [-3.1, 0.4, 7.25, 120.0])
def test_correlations_depend_on_proper_time_difference_only(label, shift, kin):
    spec = CFComponentSpec.parse(label)
    reference = cf_continuous(spec, 0.0, 0.6, kin).value
    assert cf_continuous(spec, shift, shift + 0.6, kin).value == pytest.approx(reference, rel=1e-10)


@pytest.mark.parametrize("label,sign", [("E1E1", 1.0), ("E2E2", 1.0), ("E3E3", 1.0), ("H1H1", 1.0),
                                        ("E1E2", -1.0)])
@pytest.mark.parametrize("dtau", [0.15, 0.6, 2.3])
def test_swapping_proper_times(label, sign, dtau, kin):
    spec = CFComponentSpec.parse(label)
    forward = cf_continuous(spec, 0.0, dtau, kin).value
    backward = cf_continuous(spec, dtau, 0.0, kin).value
    assert math.isfinite(forward)
    assert backward == pytest.approx(sign * forward, rel=1e-12)


def test_unsupported_component_and_coincident_times(kin):
    with pytest.raises(UnsupportedComponentError):
        cf_continuous(CFComponentSpec.parse("H2H3"), 0.0, 1.0, kin)
    with pytest.raises(DivergenceError):
        cf_continuous(E11, 0.4, 0.4, kin)


def test_near_singular_coupling_warns():
    kin = RotationKinematics(omega=1.0, r=0.99)
    result = cf_continuous(E11, 0.0, 0.01, kin)
    assert result.warnings


def test_mode_density_conventions(config):
    kin = RotationKinematics(omega=1.0, r=0.5)
    assert mode_density_normalization(kin) == pytest.approx(1.0 / math.pi ** 2, rel=1e-15)
    assert mode_density_normalization(kin, convention=CONVENTION_RIEMANN) == pytest.approx(
        0.5 / math.pi ** 2, rel=1e-15)
    with pytest.raises(DomainError):
        mode_density_normalization(kin, convention="other")


def test_phase_kinks_sit_where_phase_crosses_pi():
    delta, beta = math.pi - 0.1, 0.5
    kinks = phase_kinks(delta, beta)
    assert len(kinks) == 1
    assert float(discrete_phase(delta, beta, kinks[0])) == pytest.approx(math.pi, rel=1e-14)
    assert phase_kinks(0.3, 0.0) == []


def test_discrete_spectrum_at_rest_is_thermal_part_times_brace(inertial):
    vacuum, finite = cf_discrete(E11, 0.0, 1.0, inertial)
    expected = (1.0 / math.pi ** 2) * 0.5 * (8.0 * math.pi / 3.0) * math.cos(1.0) * thermal_part(3, 1.0)
    assert finite.method == METHOD_QUADRATURE
    assert finite.value == pytest.approx(expected, rel=1e-9)
    assert vacuum.power == 3
    assert vacuum.coefficient == pytest.approx(0.5 / math.pi ** 2)


def test_discrete_spectrum_is_periodic(kin):
    period = 2.0 * math.pi / (kin.omega * kin.gamma)
    _, first = cf_discrete(E11, 0.0, 0.25, kin)
    _, shifted = cf_discrete(E11, 0.0, 0.25 + period, kin)
    assert shifted.value == pytest.approx(first.value, rel=1e-6)


def test_truncated_discrete_spectrum_has_no_vacuum_part(kin):
    vacuum, finite = cf_discrete(E11, 0.0, 0.25, kin, n_max=8)
    assert vacuum is None
    assert finite.metadata["n_max"] == 8


def test_riemann_convention_halves_discrete_value(kin):
    riemann = RunConfig(normalization=NormalizationSettings(discrete_em_convention=CONVENTION_RIEMANN))
    _, literal = cf_discrete(E11, 0.0, 0.4, kin)
    _, halved = cf_discrete(E11, 0.0, 0.4, kin, riemann)
    assert halved.value == pytest.approx(0.5 * literal.value, rel=1e-12)
