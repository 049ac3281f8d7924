#!/usr/bin/env python3
# src/services/spectral_regularization.py
"""
Abel-Plana regularization of discrete-mode sums

A periodic detector sees modes at omega_n = n Omega. The correlators then carry
sum_n n^p cos(nF) with p=3 (electromagnetic) or p=1 (scalar). The sum splits
into the formal vacuum integral int x^p cos(xF) dx and a finite thermal part
weighted by the Planck factor at T_rot = hbar Omega / (2 pi k_B).
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import bernoulli, factorial, zeta

from config.settings import QuadratureSettings
from constants import (
    DEFAULT_PLANCK_EPSILON, REGULATED_K_CUTOFF, THERMAL_SERIES_RADIUS,
    THERMAL_SERIES_TERMS, TWO_PI, DAMPED_SERIES_CUTOFF,
)
from errors import DomainError, NumericConvergenceError, UsageError
from models.kinematics import PhysicalConstants, RotationKinematics
from models.spectral import (
    AbelPlanaSplit, EnergyDensity, PlanckComparison, RotationTemperature, SpectrumRow,
)
from utils.numeric_utils import integrate

logger = logging.getLogger("spectral_regularization")

VALID_SUM_POWERS = (1, 3)
THERMAL_SIGN = {3: 1, 1: -1}
POLE_TOLERANCE = 1e-12

# zeta(-n) = -B_{n+1} / (n + 1) for odd n
_BERNOULLI = bernoulli(3 + 2 * THERMAL_SERIES_TERMS + 2)


def _check_power(p: int) -> None:
    if p not in VALID_SUM_POWERS:
        raise UsageError(f"Mode-sum power must be one of {VALID_SUM_POWERS}, got {p}")


def _zeta_negative_odd(n: int) -> float:
    return -float(_BERNOULLI[n + 1]) / (n + 1)


def principal_phase(F):
    """Representative of F modulo 2 pi in [-pi, pi]"""
    return F - TWO_PI * np.round(np.asarray(F, dtype=float) / TWO_PI)


def closed_form_sum(p: int, F):
    """Abel-regularized sum_n n^p cos(nF), exact closed form"""
    _check_power(p)
    half_sin_sq = np.sin(np.asarray(F, dtype=float) / 2.0) ** 2
    if p == 3:
        return (3.0 - 2.0 * half_sin_sq) / (8.0 * half_sin_sq ** 2)
    return -1.0 / (4.0 * half_sin_sq)


def vacuum_value(p: int, F):
    """Regularized value of the formal integral int_0^inf x^p cos(xF) dx"""
    _check_power(p)
    F = np.asarray(F, dtype=float)
    return 6.0 / F ** 4 if p == 3 else -1.0 / F ** 2


def thermal_series(p: int, F):
    """
    Taylor series of the thermal part around F = 0

    sum_m zeta(-p - 2m) (-1)^m F^(2m) / (2m)!, convergent for |F| < 2 pi.
    """
    _check_power(p)
    F = np.asarray(F, dtype=float)
    total = np.zeros_like(F)
    for m in range(THERMAL_SERIES_TERMS):
        coefficient = _zeta_negative_odd(p + 2 * m) * (-1.0) ** m / float(factorial(2 * m, exact=True))
        total = total + coefficient * F ** (2 * m)
    return total


def thermal_part(p: int, F):
    """
    Signed thermal part of sum_n n^p cos(nF) at the principal phase

    Periodic in F with period 2 pi; finite everywhere, including F = 2 pi m.
    """
    _check_power(p)
    reduced = np.asarray(principal_phase(F), dtype=float)
    near = np.abs(reduced) < THERMAL_SERIES_RADIUS
    # Evaluate the closed form away from the origin only
    safe = np.where(near, np.pi, reduced)
    far_value = closed_form_sum(p, safe) - vacuum_value(p, safe)
    result = np.where(near, thermal_series(p, reduced), far_value)
    return float(result) if result.ndim == 0 else result


def truncated_sum(p: int, F, n_max: int):
    """Finite sum_{n=1}^{n_max} n^p cos(nF)"""
    _check_power(p)
    if n_max < 1:
        raise UsageError(f"n_max must be at least 1, got {n_max}")
    F = np.asarray(F, dtype=float)
    n = np.arange(1, n_max + 1, dtype=float)
    terms = n ** p * np.cos(np.multiply.outer(F, n))
    result = terms.sum(axis=-1)
    return float(result) if result.ndim == 0 else result


def regularized_sum(p: int, F: float) -> AbelPlanaSplit:
    """
    Closed form of sum_n n^p cos(nF) and its Abel-Plana split

    Args:
        p: 3 for the electromagnetic sum, 1 for the scalar sum
        F: Phase, not a multiple of 2 pi

    Returns:
        AbelPlanaSplit with vacuum part at the principal phase
    """
    _check_power(p)
    reduced = float(principal_phase(F))
    if abs(reduced) < POLE_TOLERANCE:
        raise DomainError(f"Mode sum has a pole at F={F} (multiple of 2 pi)", {"power": p, "F": F})
    total = float(closed_form_sum(p, F))
    vacuum = float(vacuum_value(p, reduced))
    if abs(reduced) < THERMAL_SERIES_RADIUS:
        thermal = float(thermal_series(p, reduced))
    else:
        thermal = total - vacuum
    logger.debug(f"🔍  Regularized sum p={p} F={F}: total={total}, vacuum={vacuum}, thermal={thermal}")
    return AbelPlanaSplit(
        power=p,
        phase=float(F),
        principal_phase=reduced,
        vacuum_coefficient=1.0,
        vacuum_value=vacuum,
        thermal_value=thermal,
        thermal_sign=THERMAL_SIGN[p],
        total_closed_form=total,
    )


def regularized_sum_pole_series(p: int, F: float) -> float:
    """
    Series-of-poles form of the regularized sum via Hurwitz zeta

    sum_n n^3 cos(nF) = 6 sum_m (F - 2 pi m)^-4 and
    sum_n n cos(nF) = -sum_m (F - 2 pi m)^-2, valid for 0 < |F| < 2 pi.
    """
    _check_power(p)
    if not 0.0 < abs(F) < TWO_PI:
        raise DomainError(f"Pole series needs 0 < |F| < 2 pi, got {F}")
    x = F / TWO_PI
    if p == 3:
        return 6.0 / F ** 4 + 6.0 / TWO_PI ** 4 * float(zeta(4.0, 1.0 - x) + zeta(4.0, 1.0 + x))
    return -1.0 / F ** 2 - float(zeta(2.0, 1.0 - x) + zeta(2.0, 1.0 + x)) / TWO_PI ** 2


def dimensionless_thermal_integral(p: int, u: float,
                                   settings: Optional[QuadratureSettings] = None) -> float:
    """int_0^inf 2 x^p cosh(u x) / (e^x - 1) dx for |u| < 1"""
    _check_power(p)
    settings = settings or QuadratureSettings()
    u = abs(u)
    if u >= 1.0:
        raise NumericConvergenceError(
            f"Thermal integral diverges for |F~| k_B T / hbar = {u} >= 1", {"power": p, "u": u}
        )

    def integrand(x: float) -> float:
        if x == 0.0:
            return 2.0 if p == 1 else 0.0
        return x ** p * (math.exp(-x * (1.0 - u)) + math.exp(-x * (1.0 + u))) / -math.expm1(-x)

    return integrate(integrand, 0.0, np.inf, settings, f"thermal integral p={p}")


def thermal_integral(p: int, T: float, F_tilde: float,
                     constants: PhysicalConstants = PhysicalConstants.natural(),
                     settings: Optional[QuadratureSettings] = None) -> float:
    """
    Thermal term int_0^inf 2 w^p cosh(w F~) / (e^(hbar w / k_B T) - 1) dw

    Args:
        p: Power of the frequency, 1 or 3
        T: Temperature
        F_tilde: Time-like phase argument
        constants: Unit system

    Returns:
        Value of the integral (zero at T = 0)
    """
    _check_power(p)
    if T < 0:
        raise DomainError(f"Temperature must be non-negative, got {T}")
    if T == 0:
        return 0.0
    scale = constants.hbar / (constants.k_B * T)
    value = dimensionless_thermal_integral(p, F_tilde / scale, settings) / scale ** (p + 1)
    logger.debug(f"🌡️  Thermal integral p={p} T={T} F~={F_tilde}: {value}")
    return value


def t_rot(omega: float, constants: PhysicalConstants = PhysicalConstants.natural()) -> RotationTemperature:
    """Rotation temperature hbar Omega / (2 pi k_B)"""
    if omega < 0:
        raise DomainError(f"Angular velocity must be non-negative, got {omega}")
    return RotationTemperature(
        t_rot=constants.hbar * omega / (TWO_PI * constants.k_B),
        omega=omega,
        units=constants.units,
    )


def anisotropy_factor(kin: RotationKinematics) -> float:
    return 2.0 * (4.0 * kin.gamma ** 2 - 1.0) / 3.0


def blackbody_energy_density(T: float, constants: PhysicalConstants = PhysicalConstants.natural()) -> float:
    """Stefan-Boltzmann energy density (4 sigma / c) T^4"""
    if T < 0:
        raise DomainError(f"Temperature must be non-negative, got {T}")
    return 4.0 * constants.sigma / constants.c * T ** 4


def reg_energy_density(kin: RotationKinematics,
                       constants: Optional[PhysicalConstants] = None) -> EnergyDensity:
    """
    Regularized energy density at the rotating detector

    Returns:
        EnergyDensity with value (2(4 gamma^2 - 1)/3) w_rad(T_rot) and w_rad itself
    """
    constants = constants or kin.constants
    temperature = t_rot(kin.omega, constants).t_rot
    w_rad = blackbody_energy_density(temperature, constants)
    factor = anisotropy_factor(kin)
    return EnergyDensity(value=factor * w_rad, w_rad=w_rad, anisotropy_factor=factor, t_rot=temperature)


def energy_density_spectral_route(kin: RotationKinematics,
                                  constants: Optional[PhysicalConstants] = None,
                                  settings: Optional[QuadratureSettings] = None) -> float:
    """
    Same density from the Planck thermal integral: factor (hbar / pi^2 c^3) (1/2) int 2 w^3 n(w) dw

    The 1/2 belongs to the thermal density w(T_rot); with it this route equals the closed
    form (2 (4 gamma^2 - 1) / 3) (4 sigma / c) T_rot^4 and energy_density_from_mode_sum.
    """
    constants = constants or kin.constants
    temperature = t_rot(kin.omega, constants).t_rot
    spectral = thermal_integral(3, temperature, 0.0, constants, settings)
    return anisotropy_factor(kin) * constants.hbar / (math.pi ** 2 * constants.c ** 3) * 0.5 * spectral


def energy_density_from_mode_sum(kin: RotationKinematics,
                                 constants: Optional[PhysicalConstants] = None) -> float:
    """Same density from the thermal part of sum_n n^3 at F = 0, scaled by Omega^4"""
    constants = constants or kin.constants
    thermal = float(thermal_series(3, 0.0))
    return (anisotropy_factor(kin) * constants.hbar / (math.pi ** 2 * constants.c ** 3)
            * 0.5 * kin.omega ** 4 * thermal)


def planck_comparison(T: float, t: float,
                      constants: PhysicalConstants = PhysicalConstants.natural(),
                      epsilon: Optional[float] = None,
                      settings: Optional[QuadratureSettings] = None) -> PlanckComparison:
    """
    Compare the zero-point-plus-Planck spectrum against its coth form

    coth(hbar w / 2 k_B T) = 1 + 2 / (e^(hbar w / k_B T) - 1), so both sides agree
    once the divergent vacuum piece carries the same damping e^(-eps w).

    Args:
        T: Temperature (may be zero)
        t: Time argument of cos(w t)
        constants: Unit system
        epsilon: Regulator in time units, defaults to a fixed fraction of hbar / k_B T

    Returns:
        PlanckComparison with lhs, rhs and the unregulated thermal term
    """
    settings = settings or QuadratureSettings()
    if T < 0:
        raise DomainError(f"Temperature must be non-negative, got {T}")
    if T > 0:
        scale = constants.hbar / (constants.k_B * T)
    elif t != 0:
        scale = abs(t)
    elif epsilon:
        scale = epsilon / DEFAULT_PLANCK_EPSILON
    else:
        raise DomainError("Planck comparison at T = 0 and t = 0 needs an explicit regulator")
    epsilon = epsilon if epsilon else DEFAULT_PLANCK_EPSILON * scale
    if epsilon <= 0:
        raise DomainError(f"Regulator must be positive, got {epsilon}")

    eps_x = epsilon / scale
    t_x = t / scale
    thermal_rate = 0.0 if T == 0 else 1.0  # x = hbar w / k_B T when T > 0
    upper = REGULATED_K_CUTOFF / eps_x
    oscillating = {"weight": "cos", "wvar": t_x} if t_x != 0 else {}

    def occupation(x: float) -> float:
        if thermal_rate == 0.0 or x == 0.0:
            return 0.0
        return 1.0 / math.expm1(x)

    def coth_side(x: float) -> float:
        if x == 0.0:
            return 0.0
        return x ** 3 * math.exp(-eps_x * x) * (1.0 + 2.0 * occupation(x))

    def vacuum_side(x: float) -> float:
        return x ** 3 * math.exp(-eps_x * x)

    def thermal_side(x: float) -> float:
        return 2.0 * x ** 3 * math.exp(-eps_x * x) * occupation(x)

    def bare_thermal(x: float) -> float:
        return 2.0 * x ** 3 * occupation(x)

    norm = scale ** -4
    lhs = norm * integrate(coth_side, 0.0, upper, settings, "coth side", **oscillating)
    rhs = norm * (integrate(vacuum_side, 0.0, upper, settings, "vacuum side", **oscillating)
                  + integrate(thermal_side, 0.0, upper, settings, "thermal side", **oscillating))
    if thermal_rate == 0.0:
        thermal_term = 0.0
    else:
        thermal_term = norm * integrate(bare_thermal, 0.0, DAMPED_SERIES_CUTOFF, settings,
                                    "thermal term", **oscillating)
    logger.debug(f"📋  Planck comparison T={T} t={t}: lhs={lhs}, rhs={rhs}, thermal={thermal_term}")
    return PlanckComparison(temperature=T, time=t, epsilon=epsilon, lhs=lhs, rhs=rhs,
                            thermal_term=thermal_term)


def abel_plana_check(s: float, p: int = 3,
                     settings: Optional[QuadratureSettings] = None) -> Tuple[float, float]:
    """
    Numerical Abel-Plana identity for f(x) = x^p e^(-s x)

    Returns:
        Tuple (direct convergent sum, integral + boundary + thermal term)
    """
    _check_power(p)
    if s <= 0:
        raise DomainError(f"Damping must be positive, got {s}")
    settings = settings or QuadratureSettings()
    n_terms = int(math.ceil((DAMPED_SERIES_CUTOFF + 10.0 * p) / s))
    n = np.arange(1, n_terms + 1, dtype=float)
    direct = math.fsum(n ** p * np.exp(-s * n))

    integral = math.factorial(p) / s ** (p + 1)
    boundary = 0.0  # f(0) / 2 with f(0) = 0

    def kernel(x: float) -> float:
        if x == 0.0:
            return 1.0 / math.pi if p == 1 else 0.0
        return 2.0 * x ** p / math.expm1(TWO_PI * x)

    thermal = THERMAL_SIGN[p] * integrate(kernel, 0.0, DAMPED_SERIES_CUTOFF, settings,
                                      "Abel-Plana kernel", weight="cos", wvar=s)
    return direct, integral + boundary + thermal


def thermal_weight_spectrum(kin: RotationKinematics, n_max: int,
                            constants: Optional[PhysicalConstants] = None) -> List[SpectrumRow]:
    """
    Discrete detector spectrum omega_n = n Omega with Planck weights at T_rot

    Args:
        kin: Rotation kinematics
        n_max: Number of modes
        constants: Unit system

    Returns:
        One SpectrumRow per mode
    """
    constants = constants or kin.constants
    if n_max < 1:
        raise UsageError(f"n_max must be at least 1, got {n_max}")
    density = constants.hbar / (math.pi ** 2 * constants.c ** 3)
    rows = []
    for n in range(1, n_max + 1):
        omega_n = n * kin.omega
        # hbar omega_n / k_B T_rot = 2 pi n independently of Omega
        occupation = 1.0 / math.expm1(TWO_PI * n) if kin.omega > 0 else 0.0
        rows.append(SpectrumRow(
            n=n,
            omega_n=omega_n,
            occupation=occupation,
            thermal_weight=density * omega_n ** 3 * occupation,
            zero_point_weight=0.5 * density * omega_n ** 3,
        ))
    logger.debug(f"📋  Built spectrum with {len(rows)} modes at Omega={kin.omega}")
    return rows
