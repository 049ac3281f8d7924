#!/usr/bin/env python3
# tests/test_bogolubov.py

import math

import numpy as np
import pytest

from errors import DomainError
from models.bogolubov import ModeVector
from models.kinematics import RotationKinematics
from services.bogolubov import (
    beta_prefactor, bogolubov_support, boost_mode, gaussian_regularized_beta, i_operator_amplitude,
    particle_number, push_forward, support_momentum,
)


def test_worked_particle_number(kin):
    number = particle_number(ModeVector(1.0, 0.0, 0.0), math.pi / 2.0, kin)
    assert number == pytest.approx(kin.gamma / 32.0, rel=1e-12)
    assert number == pytest.approx(0.0360844, rel=1e-6)


def test_particle_number_exact_zeros(kin):
    kprime = ModeVector(0.3, -1.1, 0.4)
    assert particle_number(kprime, 0.9, RotationKinematics(omega=1.0, r=0.0)) == 0.0
    assert particle_number(kprime, 0.0, kin) == 0.0


def test_support_satisfies_delta_constraints(rng):
    for _ in range(30):
        omega = float(rng.uniform(0.5, 2.0))
        case = RotationKinematics(omega=omega, r=float(rng.uniform(0.05, 0.9)) / omega)
        kprime = ModeVector(*rng.uniform(-2.0, 2.0, size=3))
        delta_t = float(rng.uniform(-math.pi, math.pi))
        support = bogolubov_support(kprime, delta_t, case)
        assert support.max_residual < 1e-10
        image = push_forward(support.k_on_support, delta_t, case)
        np.testing.assert_allclose(image.as_array(), -kprime.as_array(), atol=1e-10)


def test_boost_preserves_null_wave_vectors(kin):
    k = ModeVector(0.4, -0.7, 1.2)
    omega_kappa, kappa = boost_mode(k, kin)
    assert omega_kappa ** 2 - kappa.norm ** 2 == pytest.approx(0.0, abs=1e-12)
    assert omega_kappa > 0


def test_support_energy_matches_kprime(kin):
    kprime = ModeVector(0.2, 0.9, -0.5)
    support = bogolubov_support(kprime, 1.1, kin)
    assert support.omega_kappa == pytest.approx(kprime.omega, rel=1e-12)


def test_amplitude_modulus_is_particle_number(kin, rng):
    for _ in range(20):
        kprime = ModeVector(*rng.uniform(-2.0, 2.0, size=3))
        delta_t = float(rng.uniform(-math.pi, math.pi))
        amplitude = i_operator_amplitude(kprime, delta_t, kin, t=float(rng.uniform(0.0, 3.0)))
        assert abs(amplitude) ** 2 == pytest.approx(particle_number(kprime, delta_t, kin), rel=1e-10, abs=1e-300)


def test_prefactor_time_dependence_is_a_phase(kin):
    kprime = ModeVector(0.5, 0.5, 0.2)
    first = beta_prefactor(kprime, 0.8, 0.0, kin)
    later = beta_prefactor(kprime, 0.8, 2.5, kin)
    assert abs(later) == pytest.approx(abs(first), rel=1e-13)


def test_gaussian_regularization_reproduces_prefactor_on_support(kin):
    kprime = ModeVector(0.6, -0.3, 0.8)
    value, normalization = gaussian_regularized_beta(kprime, 0.7, 0.4, kin)
    expected = beta_prefactor(kprime, 0.7, 0.4, kin)
    assert value / normalization == pytest.approx(expected, rel=1e-8)


def test_gaussian_regularization_suppresses_off_support(kin):
    kprime = ModeVector(0.6, -0.3, 0.8)
    on_support, _ = gaussian_regularized_beta(kprime, 0.7, 0.4, kin)
    k = support_momentum(kprime, 0.7, kin)
    shifted = ModeVector(k.k1, k.k2, k.k3 + 1.0)
    off_support, _ = gaussian_regularized_beta(kprime, 0.7, 0.4, kin, k=shifted)
    assert abs(off_support) < 1e-2 * abs(on_support)


def test_zero_wave_vector_is_rejected(kin):
    with pytest.raises(DomainError):
        particle_number(ModeVector(0.0, 0.0, 0.0), 0.5, kin)
    with pytest.raises(DomainError):
        support_momentum(ModeVector(0.0, 0.0, 0.0), 0.5, kin)
