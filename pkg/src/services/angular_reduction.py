#!/usr/bin/env python3
# src/services/angular_reduction.py
"""
Exact k-, phi- and theta-integrals of the continuous-spectrum correlators

Every correlator integrand is a polynomial in the unit wave vector times
(1 + b sin(phi))^-4 with b = k sin(theta). The phi-integral leaves rational
functions of b, and the theta-integral leaves the moments
I_m = int_0^pi sin^m(theta) (1 - k^2 sin^2(theta))^(-7/2) d(theta).
"""

import logging
import math
from typing import Dict

import numpy as np
from scipy.special import hyp2f1

from constants import (
    MONOMIAL_ONE, MONOMIAL_KY, MONOMIAL_KX2, MONOMIAL_KY2, MONOMIAL_KZ2,
    MONOMIAL_KY_KZ2, MONOMIAL_KX2_KZ2, MONOMIAL_KY2_KZ2, NEAR_SINGULAR_B,
)
from errors import DivergenceError, DomainError, UsageError
from models.correlation import MonomialCoefficients
from models.kinematics import RotationKinematics
from utils.numeric_utils import sinc

logger = logging.getLogger("angular_reduction")

VALID_PHI_POWERS = (0, 1, 2)
VALID_THETA_POWERS = (1, 3, 5, 7)


def kparam_for(delta: float, beta: float) -> float:
    """The direction-independent constant k = -beta sin(delta/2) / (delta/2)"""
    return float(-beta * sinc(delta / 2.0))


def is_near_singular(kparam: float) -> bool:
    return abs(kparam) > NEAR_SINGULAR_B


def radial_wave_integral(delta: float, theta: float, phi: float, dt: float,
                         kin: RotationKinematics) -> float:
    """
    Regularized k^3 integral 6 / [2 r sin(delta/2) sin(theta) sin(phi) - c dt]^4

    At beta = 0.5 (Omega = 1, r = 0.5), dt = delta = 2 / sqrt(3) and theta = phi = pi/2 the
    denominator is sin(1 / sqrt(3)) - 2 / sqrt(3) = -0.608895, giving 6 / 0.608895^4 = 43.650.

    Args:
        delta: Rotation angle Omega dt
        theta: Polar angle of the wave vector
        phi: Azimuth of the wave vector
        dt: Lab time difference
        kin: Rotation kinematics

    Returns:
        Value of the regularized radial integral
    """
    if dt == 0:
        raise DivergenceError("Radial integral diverges at dt = 0", {"delta": delta})
    c_dt = kin.constants.c * dt
    denominator = 2.0 * kin.r * math.sin(delta / 2.0) * math.sin(theta) * math.sin(phi) - c_dt
    if denominator == 0.0 or abs(denominator) < 1e-300:
        raise DomainError("Vanishing phase denominator in the radial integral",
                          {"delta": delta, "theta": theta, "phi": phi, "dt": dt})
    return 6.0 / denominator ** 4


def phi_moment(p: int, b: float) -> float:
    """
    Closed form of int_0^{2 pi} sin^p(phi) (1 + b sin(phi))^-4 d(phi)

    Args:
        p: Power of sin(phi), one of 0, 1, 2
        b: Coupling, |b| < 1

    Returns:
        Value of the phi-integral
    """
    if p not in VALID_PHI_POWERS:
        raise UsageError(f"phi_moment power must be one of {VALID_PHI_POWERS}, got {p}")
    if abs(b) >= 1.0:
        raise DomainError(f"phi_moment needs |b| < 1, got {b}")
    if abs(b) > NEAR_SINGULAR_B:
        logger.warning(f"⚠️  |b|={abs(b):.4f} is close to 1, phi_moment loses precision")
    scale = math.pi / (1.0 - b * b) ** 3.5
    if p == 0:
        return scale * (2.0 + 3.0 * b * b)
    if p == 1:
        return -scale * b * (4.0 + b * b)
    return scale * (1.0 + 4.0 * b * b)


def theta_moment(m: int, kparam: float) -> float:
    """
    Closed form of int_0^pi sin^m(theta) (1 - k^2 sin^2(theta))^(-7/2) d(theta)

    Args:
        m: Odd power of sin(theta), one of 1, 3, 5, 7
        kparam: The constant k, |k| < 1

    Returns:
        Value of the theta-integral
    """
    if m not in VALID_THETA_POWERS:
        raise UsageError(f"theta_moment power must be one of {VALID_THETA_POWERS}, got {m}")
    if abs(kparam) >= 1.0:
        raise DomainError(f"theta_moment needs |k| < 1, got {kparam}")
    a = 1.0 - kparam * kparam
    if m == 1:
        return 2.0 / (5.0 * a) + 8.0 / (15.0 * a ** 2) + 16.0 / (15.0 * a ** 3)
    if m == 3:
        return 4.0 / (15.0 * a ** 2) + 16.0 / (15.0 * a ** 3)
    if m == 5:
        return 16.0 / (15.0 * a ** 3)
    # sin^7 only arises from k_z^2 times a cubic monomial
    return 32.0 / (35.0 * a ** 3) * float(hyp2f1(1.0, 0.5, 4.5, kparam * kparam))


def _monomial_integrals(kparam: float) -> Dict[str, float]:
    """int do monomial (1 + k sin(theta) sin(phi))^-4 for every tabulated monomial"""
    k = kparam
    k2 = k * k
    i1 = theta_moment(1, k)
    i3 = theta_moment(3, k)
    i5 = theta_moment(5, k)
    i7 = theta_moment(7, k)
    pi = math.pi
    return {
        MONOMIAL_ONE: pi * (2.0 * i1 + 3.0 * k2 * i3),
        MONOMIAL_KY: -pi * (4.0 * k * i3 + k * k2 * i5),
        MONOMIAL_KX2: pi * (i3 - k2 * i5),
        MONOMIAL_KY2: pi * (i3 + 4.0 * k2 * i5),
        MONOMIAL_KZ2: pi * (2.0 * i1 + (3.0 * k2 - 2.0) * i3 - 3.0 * k2 * i5),
        MONOMIAL_KY_KZ2: pi * (-4.0 * k * i3 + (4.0 * k - k * k2) * i5 + k * k2 * i7),
        MONOMIAL_KX2_KZ2: pi * (i3 - (1.0 + k2) * i5 + k2 * i7),
        MONOMIAL_KY2_KZ2: pi * (i3 + (4.0 * k2 - 1.0) * i5 - 4.0 * k2 * i7),
    }


def reduce_angular(coeffs: MonomialCoefficients, kparam: float) -> float:
    """
    Solid-angle integral of a monomial polynomial against (1 + b sin(phi))^-4

    Args:
        coeffs: Integrand polynomial
        kparam: The constant k of the phase denominator

    Returns:
        int do sum_m c_m monomial_m (1 + k sin(theta) sin(phi))^-4
    """
    if abs(kparam) >= 1.0:
        raise DomainError(f"reduce_angular needs |k| < 1, got {kparam}")
    if is_near_singular(kparam):
        logger.warning(f"⚠️  |k|={abs(kparam):.4f} is close to 1, angular reduction loses precision")
    if coeffs.is_empty:
        return 0.0
    integrals = _monomial_integrals(kparam)
    return math.fsum(value * integrals[name] for name, value in coeffs)


def monomial_values(kx, ky, kz) -> Dict[str, np.ndarray]:
    """Pointwise values of every tabulated monomial"""
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    kz = np.asarray(kz, dtype=float)
    kx2 = kx * kx
    ky2 = ky * ky
    kz2 = kz * kz
    return {
        MONOMIAL_ONE: np.ones(np.broadcast(kx, ky, kz).shape),
        MONOMIAL_KY: ky,
        MONOMIAL_KX2: kx2,
        MONOMIAL_KY2: ky2,
        MONOMIAL_KZ2: kz2,
        MONOMIAL_KY_KZ2: ky * kz2,
        MONOMIAL_KX2_KZ2: kx2 * kz2,
        MONOMIAL_KY2_KZ2: ky2 * kz2,
    }


def evaluate_monomials(coeffs: MonomialCoefficients, kx, ky, kz) -> np.ndarray:
    """Pointwise value of an integrand polynomial at unit vectors (kx, ky, kz)"""
    values = monomial_values(kx, ky, kz)
    total = np.zeros(np.broadcast(np.asarray(kx), np.asarray(ky), np.asarray(kz)).shape)
    for name, coefficient in coeffs:
        total = total + coefficient * values[name]
    return total


def azimuthal_integral(coeffs: MonomialCoefficients, q):
    """
    int_0^{2 pi} d(psi) of the polynomial around the y axis

    With ky = q, kx = sqrt(1 - q^2) cos(psi) and kz = sqrt(1 - q^2) sin(psi) every
    tabulated monomial integrates exactly; the result is a polynomial in q.
    """
    q = np.asarray(q, dtype=float)
    w = 1.0 - q * q
    pi = math.pi
    profiles = {
        MONOMIAL_ONE: 2.0 * pi * np.ones_like(q),
        MONOMIAL_KY: 2.0 * pi * q,
        MONOMIAL_KX2: pi * w,
        MONOMIAL_KY2: 2.0 * pi * q * q,
        MONOMIAL_KZ2: pi * w,
        MONOMIAL_KY_KZ2: pi * q * w,
        MONOMIAL_KX2_KZ2: 0.25 * pi * w * w,
        MONOMIAL_KY2_KZ2: pi * q * q * w,
    }
    total = np.zeros_like(q)
    for name, coefficient in coeffs:
        total = total + coefficient * profiles[name]
    return float(total) if total.ndim == 0 else total
