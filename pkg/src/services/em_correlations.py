#!/usr/bin/env python3
# src/services/em_correlations.py
"""
Electromagnetic two-field correlators at the rotating detector

Each component is a prefactor times a polynomial ("brace") in the unit wave
vector, written in coordinates whose y axis points along the chord between the
two detector positions. The continuous spectrum integrates the brace against
6 / [2 r sin(delta/2) ky - c dt]^4; the discrete spectrum against
sum_n n^3 cos(nF) with F = delta - 2 beta sin(delta/2) ky.
"""

import logging
import math
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from config.settings import RunConfig
from constants import (
    CONVENTION_LITERAL, CONVENTION_RIEMANN, METHOD_CLOSED_FORM, METHOD_QUADRATURE,
    MONOMIAL_ONE, MONOMIAL_KY, MONOMIAL_KX2, MONOMIAL_KY2, MONOMIAL_KZ2,
    MONOMIAL_KY_KZ2, MONOMIAL_KX2_KZ2, MONOMIAL_KY2_KZ2, VALID_CONVENTIONS,
)
from errors import DivergenceError, DomainError, UnsupportedComponentError
from models.correlation import CFComponentSpec, CorrelationResult, MonomialCoefficients, VacuumPart
from models.kinematics import PhysicalConstants, ProperTimePair, RotationKinematics
from models.oracles import DirectionGrid
from services.angular_reduction import (
    azimuthal_integral, evaluate_monomials, is_near_singular, kparam_for, reduce_angular, theta_moment,
)
from services.spectral_regularization import thermal_part, truncated_sum
from utils.numeric_utils import integrate_with_error

logger = logging.getLogger("em_correlations")

ZERO_COMPONENTS = ("E1E3", "E3E1", "E2E3", "E3E2")
SUPPORTED_COMPONENTS = ("E1E1", "E2E2", "E3E3", "E1E2", "E2E1", "H1H1") + ZERO_COMPONENTS


def _brace(label: str, delta: float, beta: float, gamma: float) -> Tuple[Dict[str, float], float]:
    c = math.cos(delta / 2.0)
    s = math.sin(delta / 2.0)
    cos_d = math.cos(delta)
    sin_d = math.sin(delta)
    b2 = beta * beta

    if label == "E1E1":
        return {
            MONOMIAL_ONE: cos_d,
            MONOMIAL_KY: -2.0 * beta * c,
            MONOMIAL_KX2: -c * c + b2,
            MONOMIAL_KY2: s * s + b2,
        }, 0.5 * gamma ** 2
    if label == "E2E2":
        # no gamma^2, unlike E1E1 and E3E3
        return {
            MONOMIAL_KX2: 1.0,
            MONOMIAL_KY2: -1.0,
            MONOMIAL_ONE: cos_d,
            MONOMIAL_KZ2: cos_d,
        }, 0.25
    if label == "E3E3":
        return {
            MONOMIAL_ONE: 1.0 + b2 * cos_d,
            MONOMIAL_KY: -2.0 * beta * c,
            MONOMIAL_KX2: -b2 * c * c,
            MONOMIAL_KY2: b2 * s * s,
            MONOMIAL_KZ2: -1.0,
        }, 0.5 * gamma ** 2
    if label in ("E1E2", "E2E1"):
        sign = 1.0 if label == "E1E2" else -1.0
        return {
            MONOMIAL_ONE: -sign * gamma * sin_d / 2.0,
            MONOMIAL_KZ2: -sign * gamma * sin_d / 2.0,
            MONOMIAL_KY: sign * gamma * beta * s,
        }, 0.5
    if label == "H1H1":
        return {
            MONOMIAL_KY: cos_d ** 2 - 2.0 * beta * c,
            MONOMIAL_KX2: -0.5 * sin_d ** 2,
            MONOMIAL_KY2: 0.5 * sin_d ** 2,
            MONOMIAL_KZ2: cos_d,
            MONOMIAL_KY_KZ2: -c * cos_d,
            MONOMIAL_KX2_KZ2: s * s * cos_d,
            MONOMIAL_KY2_KZ2: c * c * cos_d,
        }, 0.5 * gamma ** 2
    if label in ZERO_COMPONENTS:
        return {}, 0.5
    raise UnsupportedComponentError(
        f"No analytic integrand for component {label}",
        {"supported": list(SUPPORTED_COMPONENTS)},
    )


def cf_integrand_coefficients(spec: CFComponentSpec, delta: float,
                              kin: RotationKinematics) -> Tuple[MonomialCoefficients, float]:
    """
    Brace polynomial and overall prefactor of one correlation component

    Args:
        spec: Component, e.g. CFComponentSpec.parse("E1E1")
        delta: Rotation angle Omega (t2 - t1)
        kin: Rotation kinematics

    Returns:
        Tuple (brace polynomial, prefactor); zero components give an empty polynomial
    """
    coefficients, prefactor = _brace(spec.label, delta, kin.beta, kin.gamma)
    logger.debug(f"📋  Integrand for {spec.label} at delta={delta}: prefactor={prefactor}, "
                 f"{len(coefficients)} monomials")
    return MonomialCoefficients(coefficients), prefactor


def _pair(tau1: float, tau2: float, kin: RotationKinematics) -> ProperTimePair:
    pair = ProperTimePair(tau1, tau2, kin)
    if pair.dtau == 0:
        raise DivergenceError(
            "Continuous-spectrum correlator diverges at coincident proper times",
            {"tau1": tau1, "tau2": tau2},
        )
    return pair


def _base_metadata(spec_label: str, tau1: float, tau2: float, kin: RotationKinematics) -> dict:
    return {"component": spec_label, "kin": kin.to_dict(), "tau1": tau1, "tau2": tau2, "warnings": []}


def cf_continuous(spec: CFComponentSpec, tau1: float, tau2: float,
                  kin: RotationKinematics) -> CorrelationResult:
    """
    Continuous-spectrum correlator <A_i(tau1) B_j(tau2)> in closed form

    value = (hbar c / 2 pi^2) (6 / (c dt)^4) prefactor int do brace (1 + k ky)^-4
    with k = -beta sinc(delta / 2).

    Args:
        spec: Component
        tau1: First proper time
        tau2: Second proper time
        kin: Rotation kinematics

    Returns:
        CorrelationResult with method closed_form
    """
    pair = _pair(tau1, tau2, kin)
    constants = kin.constants
    delta = pair.delta
    kparam = kparam_for(delta, kin.beta)
    brace, prefactor = cf_integrand_coefficients(spec, delta, kin)
    metadata = _base_metadata(spec.label, tau1, tau2, kin)
    metadata.update({"delta": delta, "kparam": kparam})
    if is_near_singular(kparam):
        metadata["warnings"].append(f"|k|={abs(kparam):.4f} close to 1, reduced precision")

    angular = reduce_angular(brace, kparam)
    c_dt = constants.c * pair.dt
    value = constants.hbar * constants.c / (2.0 * math.pi ** 2) * 6.0 / c_dt ** 4 * prefactor * angular
    logger.debug(f"✅  cf_continuous {spec.label} tau=({tau1}, {tau2}): {value}")
    return CorrelationResult(value=value, method=METHOD_CLOSED_FORM, metadata=metadata)


def e11_explicit_closed_form(tau1: float, tau2: float, kin: RotationKinematics) -> float:
    """
    E1E1 continuous correlator as three theta-moment brackets

    An independent path to cf_continuous(E1E1) that never touches the monomial table.
    """
    pair = _pair(tau1, tau2, kin)
    constants = kin.constants
    delta = pair.delta
    beta = kin.beta
    k = kparam_for(delta, beta)
    k2 = k * k
    c = math.cos(delta / 2.0)
    cos_d = math.cos(delta)
    pi = math.pi

    bracket1 = 2.0 * pi * cos_d
    bracket3 = pi * (3.0 * k2 * cos_d + 1.0 - 2.0 * c * c + 2.0 * beta ** 2 + 8.0 * beta * k * c)
    bracket5 = pi * (-3.0 * k2 * c * c + 3.0 * beta ** 2 * k2 + 2.0 * beta * k * k2 * c + 4.0 * k2)
    braces = math.fsum((
        bracket1 * theta_moment(1, k),
        bracket3 * theta_moment(3, k),
        bracket5 * theta_moment(5, k),
    ))
    outer = 3.0 * constants.hbar * constants.c / (2.0 * pi ** 2 * (constants.c * pair.dt) ** 4)
    return outer * kin.gamma ** 2 * braces


def e11_unrotated_brace(delta: float, beta: float) -> Dict[str, float]:
    """
    E1E1 brace in axes aligned with the comoving frame at the later event

    Carries odd kx and kx*ky terms; its phase axis is (sin(delta/2), cos(delta/2), 0).
    Keys: "1", "kz2", "ky", "kx", "kx2", "kx_ky".
    """
    return {
        "1": math.cos(delta) + beta ** 2,
        "kz2": -beta ** 2,
        "ky": -beta * (1.0 + math.cos(delta)),
        "kx": -beta * math.sin(delta),
        "kx2": -math.cos(delta),
        "kx_ky": math.sin(delta),
    }


def cf_e11_coincident(kin: RotationKinematics, dt: float) -> CorrelationResult:
    """
    E1E1 correlator in the limit delta -> 0 at fixed c dt

    Args:
        kin: Rotation kinematics (only beta enters the brace)
        dt: Lab time difference kept in the (c dt)^-4 prefactor

    Returns:
        CorrelationResult with method closed_form
    """
    if dt == 0:
        raise DivergenceError("Coincident E1E1 correlator needs dt != 0", {"dt": dt})
    constants = kin.constants
    beta = kin.beta
    k = -beta
    pi = math.pi
    braces = math.fsum((
        2.0 * pi * theta_moment(1, k),
        (-3.0 * pi * beta ** 2 - pi) * theta_moment(3, k),
        (pi * beta ** 2 + pi * beta ** 4) * theta_moment(5, k),
    ))
    value = 3.0 * constants.hbar * constants.c / (2.0 * pi ** 2 * (constants.c * dt) ** 4) * kin.gamma ** 2 * braces
    metadata = {"component": "E1E1", "kin": kin.to_dict(), "dt": dt, "warnings": []}
    if is_near_singular(k):
        metadata["warnings"].append(f"beta={beta:.4f} close to 1, reduced precision")
    return CorrelationResult(value=value, method=METHOD_CLOSED_FORM, metadata=metadata)


def coincident_sign_sweep(betas: Iterable[float], dt: float = 1.0,
                          constants: PhysicalConstants = PhysicalConstants.natural()) -> List[dict]:
    """
    Sign of the coincident E1E1 correlator over a set of orbit speeds

    Returns:
        One row per beta with value and positivity flag
    """
    rows = []
    for beta in betas:
        kin = RotationKinematics(omega=1.0, r=beta * constants.c, constants=constants)
        value = cf_e11_coincident(kin, dt).value
        rows.append({"beta": beta, "value": value, "positive": value > 0})
        logger.debug(f"🔍  Coincident E1E1 at beta={beta}: {value}")
    return rows


def mode_density_normalization(kin: RotationKinematics, constants: Optional[PhysicalConstants] = None,
                               convention: str = CONVENTION_LITERAL) -> float:
    """
    Normalization N of the discrete mode sum

    literal: (hbar c / 2 pi^2) 2 a^2 k0^3 with a = c Omega and k0 = Omega / c;
    riemann: (hbar c / 2 pi^2) k0^4, the Riemann sum of the continuous k^3 integral.
    """
    constants = constants or kin.constants
    if convention not in VALID_CONVENTIONS:
        raise DomainError(f"Unknown normalization convention: {convention}, must be one of {VALID_CONVENTIONS}")
    k0 = kin.omega / constants.c
    base = constants.hbar * constants.c / (2.0 * math.pi ** 2)
    if convention == CONVENTION_RIEMANN:
        return base * k0 ** 4
    a = constants.c * kin.omega
    return base * 2.0 * a ** 2 * k0 ** 3


def discrete_prefactor(spec: CFComponentSpec, kin: RotationKinematics,
                       constants: Optional[PhysicalConstants] = None,
                       convention: str = CONVENTION_LITERAL) -> float:
    """Mode-density normalization times the component prefactor"""
    _, prefactor = _brace(spec.label, 0.0, kin.beta, kin.gamma)
    return mode_density_normalization(kin, constants, convention) * prefactor


def chord_axes(t_mid: float, kin: RotationKinematics) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Lab components of the brace axes for events centred on lab time t_mid

    y points along the chord between the two detector positions, x along the
    radius at the midpoint and z along the rotation axis.
    """
    phase = kin.omega * t_mid
    x_axis = np.array([math.cos(phase), math.sin(phase), 0.0])
    y_axis = np.array([-math.sin(phase), math.cos(phase), 0.0])
    return x_axis, y_axis, np.array([0.0, 0.0, 1.0])


def discrete_phase(delta: float, beta: float, q):
    """F = delta - 2 beta sin(delta / 2) ky"""
    return delta - 2.0 * beta * math.sin(delta / 2.0) * np.asarray(q, dtype=float)


def phase_kinks(delta: float, beta: float) -> List[float]:
    slope = 2.0 * beta * math.sin(delta / 2.0)
    if slope == 0.0:
        return []
    lo, hi = sorted((delta - slope, delta + slope))
    kinks = []
    m = math.ceil((lo - math.pi) / (2.0 * math.pi))
    while (2 * m + 1) * math.pi < hi:
        q = (delta - (2 * m + 1) * math.pi) / slope
        if -1.0 < q < 1.0:
            kinks.append(q)
        m += 1
    return sorted(kinks)


def cf_discrete(spec: CFComponentSpec, tau1: float, tau2: float, kin: RotationKinematics,
                config: Optional[RunConfig] = None, n_max: Optional[int] = None,
                grid: Optional[DirectionGrid] = None) -> Tuple[Optional[VacuumPart], CorrelationResult]:
    """
    Discrete-spectrum correlator split into a formal vacuum part and a finite part

    The finite part is N prefactor int do brace S(F) where S is the thermal part of
    sum_n n^3 cos(nF) at the principal phase. With n_max the truncated sum replaces
    S and no vacuum part is returned. With grid the angular integral becomes a
    weighted sum over the grid's lab directions.

    Args:
        spec: Component
        tau1: First proper time
        tau2: Second proper time
        kin: Rotation kinematics
        config: Run configuration (normalization convention and quadrature tolerances)
        n_max: Truncate the mode sum at n_max
        grid: Fixed direction grid in lab coordinates

    Returns:
        Tuple (vacuum part or None, finite CorrelationResult)
    """
    config = config or RunConfig()
    constants = kin.constants
    convention = config.normalization.discrete_em_convention
    pair = ProperTimePair(tau1, tau2, kin)
    delta = pair.delta
    beta = kin.beta
    brace, prefactor = cf_integrand_coefficients(spec, delta, kin)
    scale = mode_density_normalization(kin, constants, convention) * prefactor

    metadata = _base_metadata(spec.label, tau1, tau2, kin)
    metadata.update({"delta": delta, "convention": convention, "n_max": n_max})

    def mode_sum(F):
        return truncated_sum(3, F, n_max) if n_max else thermal_part(3, F)

    if brace.is_empty or scale == 0.0:
        angular, error = 0.0, 0.0
    elif grid is not None:
        x_axis, y_axis, z_axis = chord_axes(0.5 * (pair.t1 + pair.t2), kin)
        directions = grid.directions()
        kx = directions @ x_axis
        ky = directions @ y_axis
        kz = directions @ z_axis
        values = evaluate_monomials(brace, kx, ky, kz) * np.asarray(mode_sum(discrete_phase(delta, beta, ky)))
        angular = math.fsum(grid.weights * values)
        error = 0.0
        metadata["grid_size"] = grid.size
    else:
        def integrand(q: float) -> float:
            return azimuthal_integral(brace, q) * float(mode_sum(float(discrete_phase(delta, beta, q))))

        kinks = phase_kinks(delta, beta)
        extra = {"points": kinks} if kinks else {}
        angular, error = integrate_with_error(integrand, -1.0, 1.0, config.quadrature,
                                              f"discrete {spec.label} angular integral", **extra)

    method = METHOD_QUADRATURE
    result = CorrelationResult(value=scale * angular, method=method,
                               error_estimate=abs(scale) * error, metadata=metadata)
    vacuum = None
    if not n_max:
        vacuum = VacuumPart(
            power=3,
            coefficient=scale,
            description="coefficient of int do brace(k) int_0^inf x^3 cos(x F(k)) dx",
        )
    logger.debug(f"✅  cf_discrete {spec.label} tau=({tau1}, {tau2}): finite={result.value}")
    return vacuum, result
