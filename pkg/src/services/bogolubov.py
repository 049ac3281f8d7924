#!/usr/bin/env python3
# src/services/bogolubov.py
"""
Bogolubov coefficient beta_{k k'} between lab modes and the modes of mu_t

beta_{k k'} is a product of three delta functions times a finite amplitude.
It is represented by the support momentum k(k') where the deltas fire and
the amplitude evaluated there; it is never returned as a number.
"""

import cmath
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from constants import DEFAULT_GAUSSIAN_GRID, DEFAULT_GAUSSIAN_SIGMA
from errors import DomainError
from models.bogolubov import BogolubovSupport, ModeVector
from models.kinematics import RotationKinematics

logger = logging.getLogger("bogolubov")

GAUSSIAN_HALF_WIDTH = 8.0  # grid spans +- this many sigma


def _require_nonzero(kprime: ModeVector) -> None:
    if kprime.norm == 0.0:
        raise DomainError("Wave vector k' must be nonzero", {"kprime": kprime.as_tuple()})


def boost_mode(k: ModeVector, kin: RotationKinematics) -> Tuple[float, ModeVector]:
    """
    Lorentz image (omega_kappa, kappa) of (omega_k, k) along the x2 axis

    omega_kappa = gamma (omega_k + v k2), kappa2 = gamma (k2 + omega_k v / c^2)
    """
    c = kin.constants.c
    omega_k = c * k.norm
    gamma = kin.gamma
    v = kin.v
    omega_kappa = gamma * (omega_k + v * k.k2)
    kappa = ModeVector(k.k1, gamma * (k.k2 + omega_k * v / c ** 2), k.k3, c)
    return omega_kappa, kappa


def push_forward(k: ModeVector, delta_t: float, kin: RotationKinematics) -> ModeVector:
    """
    Boost k, then rotate by delta_t in the orbit plane

    On the support this reproduces -k'.
    """
    _, kappa = boost_mode(k, kin)
    cos_d = math.cos(delta_t)
    sin_d = math.sin(delta_t)
    return ModeVector(
        kappa.k1 * cos_d - kappa.k2 * sin_d,
        kappa.k1 * sin_d + kappa.k2 * cos_d,
        kappa.k3,
        kin.constants.c,
    )


def support_residuals(k: ModeVector, kprime: ModeVector, delta_t: float,
                      kin: RotationKinematics) -> Tuple[float, float, float]:
    """Arguments (A1, A2, A3) of the three delta functions"""
    image = push_forward(k, delta_t, kin)
    return (kprime.k1 + image.k1, kprime.k2 + image.k2, kprime.k3 + image.k3)


def support_momentum(kprime: ModeVector, delta_t: float, kin: RotationKinematics) -> ModeVector:
    """
    Wave vector k at which beta_{k k'} is supported

    kappa = -R(-delta_t) k' undoes the rotation, then the inverse boost
    k2 = gamma (kappa2 - omega_kappa v / c^2) with omega_kappa = c |k'|.

    Args:
        kprime: Lab mode k'
        delta_t: Frame angle Omega t
        kin: Rotation kinematics

    Returns:
        ModeVector k on the support
    """
    _require_nonzero(kprime)
    c = kin.constants.c
    cos_d = math.cos(delta_t)
    sin_d = math.sin(delta_t)
    kappa1 = -(kprime.k1 * cos_d + kprime.k2 * sin_d)
    kappa2 = -(-kprime.k1 * sin_d + kprime.k2 * cos_d)
    kappa3 = -kprime.k3
    omega_kappa = c * math.sqrt(kappa1 ** 2 + kappa2 ** 2 + kappa3 ** 2)
    k = ModeVector(kappa1, kin.gamma * (kappa2 - omega_kappa * kin.v / c ** 2), kappa3, c)
    logger.debug(f"🔍  Support momentum for k'={kprime.as_tuple()} at delta_t={delta_t}: {k.as_tuple()}")
    return k


def bogolubov_support(kprime: ModeVector, delta_t: float, kin: RotationKinematics) -> BogolubovSupport:
    """Support momentum with its energy bookkeeping and residuals"""
    k = support_momentum(kprime, delta_t, kin)
    omega_kappa, _ = boost_mode(k, kin)
    return BogolubovSupport(
        kprime=kprime,
        delta_t=delta_t,
        k_on_support=k,
        omega_kappa=omega_kappa,
        residuals=support_residuals(k, kprime, delta_t, kin),
    )


def beta_prefactor(kprime: ModeVector, delta_t: float, t: float, kin: RotationKinematics) -> complex:
    """
    Finite amplitude multiplying the three delta functions of beta_{k k'}

    (-i / 2 sqrt(omega_k omega_k')) exp{-i t [omega_k' + omega_k / gamma] + i r [-k1 - k1']}
    x [i r Omega k2' + i (omega_k' - omega_k / gamma)], with k on the support.

    Args:
        kprime: Lab mode k'
        delta_t: Frame angle Omega t
        t: Lab time
        kin: Rotation kinematics

    Returns:
        Complex amplitude; only its phase depends on t
    """
    k = support_momentum(kprime, delta_t, kin)
    omega_k = kin.constants.c * k.norm
    omega_p = kin.constants.c * kprime.norm
    gamma = kin.gamma
    phase = -t * (omega_p + omega_k / gamma) + kin.r * (-k.k1 - kprime.k1)
    bracket = 1j * kin.r * kin.omega * kprime.k2 + 1j * (omega_p - omega_k / gamma)
    return -1j / (2.0 * math.sqrt(omega_k * omega_p)) * cmath.exp(1j * phase) * bracket


def particle_number(kprime: ModeVector, delta_t: float, kin: RotationKinematics) -> float:
    """
    Vacuum expectation of N_k' in the vacuum of mu_t

    v^2 gamma [omega' - v (k1' sin d - k2' cos d)] (k2' + k1' sin d - k2' cos d)^2 / (4 omega'^3).
    Dimensionless only in natural units.
    """
    _require_nonzero(kprime)
    v = kin.v
    omega_p = kin.constants.c * kprime.norm
    sin_d = math.sin(delta_t)
    cos_d = math.cos(delta_t)
    energy = omega_p - v * (kprime.k1 * sin_d - kprime.k2 * cos_d)
    transverse = kprime.k2 + kprime.k1 * sin_d - kprime.k2 * cos_d
    return v ** 2 * kin.gamma * energy * transverse ** 2 / (4.0 * omega_p ** 3)


def i_operator_amplitude(kprime: ModeVector, delta_t: float, kin: RotationKinematics,
                         t: float = 0.0) -> complex:
    """
    c-number coefficient of a^{mu_t}(-k') in the integral operator I_k'

    Its squared modulus is particle_number.
    """
    _require_nonzero(kprime)
    v = kin.v
    omega_p = kin.constants.c * kprime.norm
    sin_d = math.sin(delta_t)
    cos_d = math.cos(delta_t)
    energy = omega_p - v * (kprime.k1 * sin_d - kprime.k2 * cos_d)
    if energy < 0:
        raise DomainError("Boosted mode energy is negative", {"energy": energy})
    transverse = kprime.k2 + kprime.k1 * sin_d - kprime.k2 * cos_d
    modulus = v * math.sqrt(kin.gamma) * math.sqrt(energy) * transverse / (2.0 * omega_p ** 1.5)
    phase = (t * (-2.0 * omega_p + v * (kprime.k2 * sin_d - kprime.k2 * cos_d))
             + kin.r * (-kprime.k1 + kprime.k1 * cos_d + kprime.k2 * sin_d))
    return modulus * cmath.exp(1j * phase)


def gaussian_regularized_beta(kprime: ModeVector, delta_t: float, t: float, kin: RotationKinematics,
                              sigma: float = DEFAULT_GAUSSIAN_SIGMA,
                              n_grid: int = DEFAULT_GAUSSIAN_GRID,
                              k: Optional[ModeVector] = None) -> Tuple[complex, float]:
    """
    Pre-integration form of beta_{k k'} with Gaussian-damped x integrals

    sum_j B0 Bj int x_j e^{i x A} ... + B0 B3 prod int e^{i x A}, each x integral
    damped by exp(-x^2 / 2 sigma^2) and done by the trapezoid rule.

    Args:
        kprime: Lab mode k'
        delta_t: Frame angle
        t: Lab time
        kin: Rotation kinematics
        sigma: Width of the Gaussian damping
        n_grid: Trapezoid nodes per axis
        k: Mode k, defaults to the support momentum

    Returns:
        Tuple (regularized value, delta normalization ((sqrt(2 pi) sigma) / 2 pi)^3)
    """
    _require_nonzero(kprime)
    if sigma <= 0 or n_grid < 3:
        raise DomainError(f"Need sigma > 0 and at least 3 grid nodes, got sigma={sigma}, n_grid={n_grid}")
    k = k or support_momentum(kprime, delta_t, kin)
    c = kin.constants.c
    omega_k = kin.constants.c * k.norm
    omega_p = kin.constants.c * kprime.norm
    gamma = kin.gamma
    r = kin.r
    big_omega = kin.omega
    cos_d = math.cos(delta_t)
    sin_d = math.sin(delta_t)
    kappa2 = gamma * (k.k2 + omega_k * kin.v / c ** 2)

    b0 = (-1j / ((2.0 * math.pi) ** 3 * 2.0 * math.sqrt(omega_k * omega_p))
          * cmath.exp(-1j * t * (omega_p + omega_k / gamma)
                      + 1j * r * (-k.k1 + k.k1 * cos_d - kappa2 * sin_d)))
    b1 = -1j * big_omega * (k.k1 * sin_d + kappa2 * cos_d)
    b2 = -1j * big_omega * (k.k1 * cos_d - kappa2 * sin_d)
    b3 = -1j * r * big_omega * (k.k1 * sin_d + kappa2 * cos_d) + 1j * (omega_p - omega_k / gamma)
    a1, a2, a3 = support_residuals(k, kprime, delta_t, kin)

    x = np.linspace(-GAUSSIAN_HALF_WIDTH * sigma, GAUSSIAN_HALF_WIDTH * sigma, n_grid)
    damping = np.exp(-x ** 2 / (2.0 * sigma ** 2))

    def plain(a: float) -> complex:
        return complex(trapezoid(damping * np.exp(1j * x * a), x))

    def weighted(a: float) -> complex:
        return complex(trapezoid(x * damping * np.exp(1j * x * a), x))

    i1, i2, i3 = plain(a1), plain(a2), plain(a3)
    value = (b0 * b1 * weighted(a1) * i2 * i3
             + b0 * b2 * i1 * weighted(a2) * i3
             + b0 * b3 * i1 * i2 * i3)
    normalization = (math.sqrt(2.0 * math.pi) * sigma / (2.0 * math.pi)) ** 3
    logger.debug(f"🧪  Gaussian-regularized beta: {value} (normalization {normalization})")
    return value, normalization
