#!/usr/bin/env python3
# src/services/scalar_correlations.py

import logging
import math
from typing import Optional, Tuple

from config.settings import RunConfig
from constants import CONVENTION_LITERAL, CONVENTION_RIEMANN, METHOD_CLOSED_FORM, METHOD_QUADRATURE, VALID_CONVENTIONS
from errors import DivergenceError, DomainError
from models.correlation import CorrelationResult, VacuumPart
from models.kinematics import PhysicalConstants, ProperTimePair, RotationKinematics
from services.em_correlations import phase_kinks, discrete_phase
from services.spectral_regularization import thermal_part, truncated_sum
from utils.numeric_utils import integrate_with_error

logger = logging.getLogger("scalar_correlations")


def scalar_phi_reduction(E_val: float, B_val: float) -> float:
    """
    int_0^{2 pi} d(phi) (E sin(phi) - B)^-2 = 2 pi B / (B^2 - E^2)^(3/2)

    Args:
        E_val: 2 r sin(theta) sin(Omega gamma dtau / 2)
        B_val: gamma c dtau, must exceed |E|

    Returns:
        Value of the phi-integral
    """
    if B_val <= abs(E_val):
        raise DomainError(f"phi reduction needs B > |E|, got B={B_val}, E={E_val}")
    return 2.0 * math.pi * B_val / (B_val ** 2 - E_val ** 2) ** 1.5


def wightman_denominator(tau1: float, tau2: float, kin: RotationKinematics) -> float:
    """gamma^2 c^2 dtau^2 - 4 r^2 sin^2(Omega gamma dtau / 2)"""
    pair = ProperTimePair(tau1, tau2, kin)
    c = kin.constants.c
    return (kin.gamma * c * pair.dtau) ** 2 - 4.0 * kin.r ** 2 * math.sin(pair.delta / 2.0) ** 2


def scalar_cf_continuous(tau1: float, tau2: float, kin: RotationKinematics) -> CorrelationResult:
    """
    Massless scalar zero-point correlator, -(hbar c / pi) / denominator

    Has the functional form of the Wightman function of the rotating detector.
    """
    if tau1 == tau2:
        raise DivergenceError("Scalar correlator diverges at coincident proper times",
                              {"tau1": tau1, "tau2": tau2})
    denominator = wightman_denominator(tau1, tau2, kin)
    if denominator <= 0:
        raise DomainError(f"Non-positive Wightman denominator {denominator}",
                          {"tau1": tau1, "tau2": tau2, "kin": kin.to_dict()})
    constants = kin.constants
    value = -(constants.hbar * constants.c / math.pi) / denominator
    metadata = {"kin": kin.to_dict(), "tau1": tau1, "tau2": tau2,
                "denominator": denominator, "warnings": []}
    logger.debug(f"✅  scalar_cf_continuous tau=({tau1}, {tau2}): {value}")
    return CorrelationResult(value=value, method=METHOD_CLOSED_FORM, metadata=metadata)


def scalar_discrete_prefactor(kin: RotationKinematics, constants: Optional[PhysicalConstants] = None,
                              convention: str = CONVENTION_LITERAL) -> float:
    """k0^2 hbar c / (2 pi^2), or half of it for the riemann convention"""
    constants = constants or kin.constants
    if convention not in VALID_CONVENTIONS:
        raise DomainError(f"Unknown normalization convention: {convention}, must be one of {VALID_CONVENTIONS}")
    k0 = kin.omega / constants.c
    denominator = 4.0 if convention == CONVENTION_RIEMANN else 2.0
    return k0 ** 2 * constants.hbar * constants.c / (denominator * math.pi ** 2)


def scalar_cf_discrete(tau1: float, tau2: float, kin: RotationKinematics,
                       config: Optional[RunConfig] = None,
                       n_max: Optional[int] = None) -> Tuple[Optional[VacuumPart], CorrelationResult]:
    """
    Discrete-spectrum scalar correlator with its vacuum/thermal split

    Args:
        tau1: First proper time
        tau2: Second proper time
        kin: Rotation kinematics
        config: Run configuration
        n_max: Truncate the mode sum at n_max instead of regularizing it

    Returns:
        Tuple (vacuum part or None, finite CorrelationResult)
    """
    config = config or RunConfig()
    convention = config.normalization.scalar_phase_convention
    pair = ProperTimePair(tau1, tau2, kin)
    delta = pair.delta
    beta = kin.beta
    scale = scalar_discrete_prefactor(kin, kin.constants, convention)

    def integrand(q: float) -> float:
        F = float(discrete_phase(delta, beta, q))
        return truncated_sum(1, F, n_max) if n_max else thermal_part(1, F)

    if scale == 0.0:
        angular, error = 0.0, 0.0
    else:
        kinks = phase_kinks(delta, beta)
        extra = {"points": kinks} if kinks else {}
        # the integrand is independent of the azimuth around the chord
        value, error = integrate_with_error(integrand, -1.0, 1.0, config.quadrature,
                                            "discrete scalar angular integral", **extra)
        angular, error = 2.0 * math.pi * value, 2.0 * math.pi * error

    metadata = {"kin": kin.to_dict(), "tau1": tau1, "tau2": tau2, "delta": delta,
                "convention": convention, "n_max": n_max, "warnings": []}
    result = CorrelationResult(value=scale * angular, method=METHOD_QUADRATURE,
                               error_estimate=abs(scale) * error, metadata=metadata)
    vacuum = None
    if not n_max:
        vacuum = VacuumPart(power=1, coefficient=scale,
                            description="coefficient of int do int_0^inf x cos(x F(k)) dx")
    logger.debug(f"✅  scalar_cf_discrete tau=({tau1}, {tau2}): finite={result.value}")
    return vacuum, result
