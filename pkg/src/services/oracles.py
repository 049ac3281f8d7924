#!/usr/bin/env python3
# src/services/oracles.py
"""
Independent numerical engines used to validate the closed forms

Every oracle inserts a regulator (e^(-eps k) or e^(-eta n)), evaluates the
regulated quantity by brute-force quadrature or summation and extrapolates the
regulator to zero.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from config.settings import QuadratureSettings, RunConfig
from constants import (
    DAMPED_SERIES_CUTOFF, DEFAULT_PSI_NODES, METHOD_QUADRATURE, ORACLE_DIRECTION_EPSREL,
    REGULATED_K_CUTOFF,
)
from errors import DomainError, UnsupportedComponentError
from models.correlation import CFComponentSpec, CorrelationResult
from models.kinematics import ProperTimePair, RotationKinematics
from models.oracles import RegulatorLadder
from services.angular_reduction import evaluate_monomials
from services.em_correlations import (
    cf_integrand_coefficients, discrete_phase, e11_unrotated_brace, mode_density_normalization,
    phase_kinks,
)
from services.scalar_correlations import scalar_discrete_prefactor
from services.spectral_regularization import POLE_TOLERANCE, principal_phase
from utils.numeric_utils import integrate, periodic_nodes, richardson_extrapolate, sinc

logger = logging.getLogger("oracles")

SCALAR = "scalar"
GAUSS_NODES_PER_SEGMENT = 48
RADIAL_CHEBYSHEV_MOMENTS = 100

__all__ = [
    "SCALAR", "regulated_radial_integral", "regulated_cf_quadrature", "abel_summed_series",
    "damped_mode_sum_cf", "richardson_extrapolate",
]

ComponentLike = Union[CFComponentSpec, str]


def _is_scalar(spec: ComponentLike) -> bool:
    return isinstance(spec, str) and spec.lower() == SCALAR


def _as_spec(spec: ComponentLike) -> CFComponentSpec:
    return spec if isinstance(spec, CFComponentSpec) else CFComponentSpec.parse(spec)


@lru_cache(maxsize=64)
def _scaled_settings(epsabs: float, epsrel: float, limit: int) -> QuadratureSettings:
    return QuadratureSettings(epsabs=epsabs, epsrel=epsrel, limit=limit)


def regulated_radial_integral(p: int, X: float, eps: float,
                              settings: Optional[QuadratureSettings] = None) -> float:
    """
    int_0^inf k^p e^(-eps k) cos(k X) dk by cos-weighted quadrature

    Runs in u = eps k, where the integrand u^p e^(-u) cos(u X / eps) is O(1) for
    every eps and its absolute integral is p!. The upper limit is u = 60 and the
    result is scaled back by eps^-(p + 1).
    """
    if eps <= 0:
        raise DomainError(f"Regulator must be positive, got {eps}")
    settings = settings or QuadratureSettings()
    mass = float(math.factorial(p))
    scaled = _scaled_settings(settings.epsabs * mass, settings.epsrel, settings.limit)
    omega = X / eps

    def damped(u: float) -> float:
        return u ** p * math.exp(-u)

    extra = {"weight": "cos", "wvar": omega, "maxp1": RADIAL_CHEBYSHEV_MOMENTS} if omega != 0 else {}
    value = integrate(damped, 0.0, REGULATED_K_CUTOFF, scaled, f"regulated k^{p} integral",
                      scale=mass, **extra)
    return value / eps ** (p + 1)


def _absolute_mass(func: Callable[[float], float]) -> float:
    """Gauss-Legendre estimate of int_-1^1 |func(q)| dq"""
    nodes, weights = leggauss(GAUSS_NODES_PER_SEGMENT)
    return float(sum(w * abs(func(q)) for q, w in zip(nodes, weights)))


def _psi_average(evaluate: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
                 axis: np.ndarray, q: float, n_psi: int) -> float:
    """Trapezoid sum over the azimuth psi around a unit axis at k . axis = q"""
    axis = np.asarray(axis, dtype=float)
    # two unit vectors completing axis to a right-handed frame
    helper = np.array([0.0, 0.0, 1.0]) if abs(axis[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = np.cross(helper, axis)
    u /= np.linalg.norm(u)
    w = np.cross(axis, u)
    psi = periodic_nodes(n_psi)
    rho = math.sqrt(max(0.0, 1.0 - q * q))
    directions = (q * axis[:, None] + rho * (np.cos(psi) * u[:, None] + np.sin(psi) * w[:, None]))
    values = evaluate(directions[0], directions[1], directions[2])
    return float(np.sum(values)) * 2.0 * math.pi / n_psi


def _unrotated_evaluator(brace: dict) -> Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]:
    def evaluate(kx, ky, kz):
        return (brace["1"] + brace["kz2"] * kz * kz + brace["ky"] * ky + brace["kx"] * kx
                + brace["kx2"] * kx * kx + brace["kx_ky"] * kx * ky)
    return evaluate


def regulated_cf_quadrature(spec: ComponentLike, tau1: float, tau2: float, kin: RotationKinematics,
                            ladder: Optional[RegulatorLadder] = None,
                            config: Optional[RunConfig] = None,
                            rotated: bool = True) -> CorrelationResult:
    """
    Continuous-spectrum correlator by regulated 3-D quadrature

    For each eps on the ladder integrates prefactor * brace * k^p e^(-eps k) cos(k X)
    over q (direction cosine along the phase axis, adaptive), psi (around the axis,
    periodic trapezoid) and k (cos-weighted), then extrapolates eps -> 0.
    The regulated values are even in eps, so the fit runs in eps^2.

    Args:
        spec: Component or "scalar"
        tau1: First proper time
        tau2: Second proper time
        kin: Rotation kinematics
        ladder: Regulator values in length units; defaults to the configured factors
            times c |dt| (1 - beta |sinc(delta / 2)|)
        config: Run configuration
        rotated: Use the brace in chord axes; False integrates the E1E1 brace in
            axes of the later comoving frame

    Returns:
        CorrelationResult with the extrapolation residual as error estimate
    """
    config = config or RunConfig()
    pair = ProperTimePair(tau1, tau2, kin)
    if pair.dtau == 0:
        raise DomainError("Regulated quadrature needs tau1 != tau2", {"tau1": tau1, "tau2": tau2})
    constants = kin.constants
    c_dt = constants.c * pair.dt
    delta = pair.delta
    chord = 2.0 * kin.r * math.sin(delta / 2.0)
    settings = config.quadrature

    if ladder is None:
        closest = abs(c_dt) * (1.0 - kin.beta * abs(float(sinc(delta / 2.0))))
        ladder = RegulatorLadder.scaled(config.regulators.epsilon_factors, closest,
                                        config.regulators.extrapolation_order)

    if _is_scalar(spec):
        power = 1
        label = SCALAR
        outer = constants.hbar * constants.c / (4.0 * math.pi ** 2)
        axis = np.array([0.0, 1.0, 0.0])

        def angular_weight(q: float) -> float:
            return 2.0 * math.pi
    else:
        spec = _as_spec(spec)
        power = 3
        label = spec.label
        if rotated:
            brace, prefactor = cf_integrand_coefficients(spec, delta, kin)
            axis = np.array([0.0, 1.0, 0.0])

            def evaluate(kx, ky, kz):
                return evaluate_monomials(brace, kx, ky, kz)
        else:
            if label != "E1E1":
                raise UnsupportedComponentError(f"Unrotated brace exists for E1E1 only, got {label}")
            _, prefactor = cf_integrand_coefficients(spec, delta, kin)
            evaluate = _unrotated_evaluator(e11_unrotated_brace(delta, kin.beta))
            # chord direction in axes of the later comoving frame
            axis = np.array([math.sin(delta / 2.0), math.cos(delta / 2.0), 0.0])
        outer = constants.hbar * constants.c / (2.0 * math.pi ** 2) * prefactor

        def angular_weight(q: float) -> float:
            return _psi_average(evaluate, axis, q, DEFAULT_PSI_NODES)

    values: List[float] = []
    for eps in ladder.values:
        def integrand(q: float, eps=eps) -> float:
            X = chord * q - c_dt
            return angular_weight(q) * regulated_radial_integral(power, X, eps, settings)

        mass = _absolute_mass(integrand)
        direction_settings = QuadratureSettings(
            epsabs=max(settings.epsabs, ORACLE_DIRECTION_EPSREL * mass),
            epsrel=max(settings.epsrel, ORACLE_DIRECTION_EPSREL),
            limit=settings.limit,
        )
        values.append(outer * integrate(integrand, -1.0, 1.0, direction_settings,
                                        f"regulated {label} direction integral", scale=mass))
        logger.debug(f"🔄  Regulated {label} at eps={eps}: {values[-1]}")

    estimate, residual = richardson_extrapolate([eps ** 2 for eps in ladder.values], values,
                                                ladder.extrapolation_order)
    metadata = {
        "component": label,
        "kin": kin.to_dict(),
        "tau1": tau1,
        "tau2": tau2,
        "ladder": ladder.to_dict(),
        "ladder_values": values,
        "rotated": rotated,
        "warnings": [],
    }
    return CorrelationResult(value=estimate, method=METHOD_QUADRATURE, error_estimate=residual, metadata=metadata)


def abel_summed_series(p: int, F: float, ladder: Optional[RegulatorLadder] = None,
                       config: Optional[RunConfig] = None) -> float:
    """
    Abel sum of sum_n n^p cos(nF) by eta-damping and extrapolation to eta = 0

    The default eta ladder is scaled by the distance of F to the nearest pole 2 pi m.

    Args:
        p: Power of n
        F: Phase, away from the poles
        ladder: Explicit eta values
        config: Run configuration

    Returns:
        Extrapolated sum
    """
    config = config or RunConfig()
    distance = abs(float(principal_phase(F)))
    if distance < POLE_TOLERANCE:
        raise DomainError(f"F={F} sits on a pole of the mode sum", {"power": p, "F": F})
    if ladder is None:
        factors = config.regulators.eta_factors
        ladder = RegulatorLadder.scaled(factors, distance, len(factors) - 1)

    values = []
    for eta in ladder.values:
        n_terms = int(math.ceil(DAMPED_SERIES_CUTOFF / eta))
        n = np.arange(1, n_terms + 1, dtype=float)
        values.append(math.fsum(n ** p * np.exp(-eta * n) * np.cos(n * F)))

    estimate, residual = richardson_extrapolate(ladder.values, values, ladder.extrapolation_order,
                                                check_monotone=False)
    logger.debug(f"🧪  Abel-summed series p={p} F={F}: {estimate} (residual {residual:.2e})")
    return estimate


def _damped_difference(p: int, F: np.ndarray, eta: float) -> np.ndarray:
    """sum_n n^p e^(-eta n) cos(nF) minus the Laplace transform of x^p cos(x F_principal)"""
    n_terms = int(math.ceil(DAMPED_SERIES_CUTOFF / eta))
    n = np.arange(1, n_terms + 1, dtype=float)
    series = (n ** p * np.exp(-eta * n)) @ np.cos(np.outer(n, F))
    reduced = principal_phase(F)
    vacuum = np.real(math.factorial(p) / (eta - 1j * reduced) ** (p + 1))
    return series - vacuum


def _segment_nodes(breaks: Sequence[float]) -> tuple:
    x, w = leggauss(GAUSS_NODES_PER_SEGMENT)
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(lo + half * (x + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def damped_mode_sum_cf(spec: ComponentLike, tau1: float, tau2: float, kin: RotationKinematics,
                       config: Optional[RunConfig] = None,
                       eta_values: Optional[Sequence[float]] = None) -> CorrelationResult:
    """
    Finite part of the discrete-spectrum correlator from damped mode sums

    For each eta the vacuum pole is subtracted from sum_n n^p e^(-eta n) cos(nF)
    direction by direction; the angular integral uses Gauss-Legendre in q (split at
    the kinks of the principal phase) and the trapezoid rule in psi. The eta -> 0
    limit is taken by polynomial extrapolation.
    """
    config = config or RunConfig()
    eta_values = tuple(eta_values or config.regulators.damped_eta_values)
    pair = ProperTimePair(tau1, tau2, kin)
    delta = pair.delta
    beta = kin.beta
    q, wq = _segment_nodes([-1.0] + phase_kinks(delta, beta) + [1.0])

    if _is_scalar(spec):
        power = 1
        label = SCALAR
        scale = scalar_discrete_prefactor(kin, kin.constants, config.normalization.scalar_phase_convention)
        profile = np.full_like(q, 2.0 * math.pi)
    else:
        spec = _as_spec(spec)
        power = 3
        label = spec.label
        brace, prefactor = cf_integrand_coefficients(spec, delta, kin)
        scale = mode_density_normalization(kin, kin.constants,
                                           config.normalization.discrete_em_convention) * prefactor
        y_axis = np.array([0.0, 1.0, 0.0])
        profile = np.array([
            _psi_average(lambda kx, ky, kz: evaluate_monomials(brace, kx, ky, kz), y_axis, float(qi),
                         DEFAULT_PSI_NODES)
            for qi in q
        ])

    F = discrete_phase(delta, beta, q)
    values = []
    for eta in eta_values:
        values.append(scale * float(np.sum(wq * profile * _damped_difference(power, F, eta))))
        logger.debug(f"🔄  Damped {label} mode sum at eta={eta}: {values[-1]}")

    estimate, residual = richardson_extrapolate(eta_values, values, len(eta_values) - 1,
                                                check_monotone=False)
    metadata = {"component": label, "kin": kin.to_dict(), "tau1": tau1, "tau2": tau2,
                "eta_values": list(eta_values), "ladder_values": values, "warnings": []}
    return CorrelationResult(value=estimate, method=METHOD_QUADRATURE, error_estimate=residual, metadata=metadata)
