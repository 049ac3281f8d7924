#!/usr/bin/env python3
# src/services/monte_carlo.py
"""
Random-phase sampling of the discrete zero-point field

The field is a superposition of plane waves with frequencies n Omega, directions
from a fixed sphere grid, two transverse polarizations and independent uniform
phases. Each ensemble member is one draw of all phases; the correlator estimate is
the ensemble mean of the product of the two projected field values.
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from config.settings import RunConfig
from constants import (
    CONVENTION_LITERAL, DEFAULT_PHASE_CHECK_MODES, FIELD_ELECTRIC, MC_SIGMA_BOUND, METHOD_MONTE_CARLO,
)
from errors import DomainError
from models.correlation import CFComponentSpec, CorrelationResult
from models.kinematics import PhysicalConstants, ProperTimePair, RotationKinematics
from models.oracles import DirectionGrid, McFieldSpec
from services.em_correlations import mode_density_normalization
from services.kinematics import comoving_axes, detector_worldline_lab

logger = logging.getLogger("monte_carlo")


def _polarizations(directions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unit vectors theta-hat and phi-hat transverse to each direction"""
    kx, ky, kz = directions.T
    sin_theta = np.hypot(kx, ky)
    if np.any(sin_theta == 0.0):
        raise DomainError("Direction grid must not contain the poles")
    cos_phi = kx / sin_theta
    sin_phi = ky / sin_theta
    theta_hat = np.column_stack((kz * cos_phi, kz * sin_phi, -sin_theta))
    phi_hat = np.column_stack((-sin_phi, cos_phi, np.zeros_like(kx)))
    return theta_hat, phi_hat


class MonteCarloSampler:
    """
    Ensemble estimator of zero-point correlators

    Mode m = (n, direction j, polarization) has amplitude A_m^2 = N n^3 w_j where N
    is the discrete mode-density normalization and w_j the grid weight. The field of
    the first component is read at tau1, the second at tau2.
    """

    def __init__(self, mc: McFieldSpec, constants: Optional[PhysicalConstants] = None,
                 convention: str = CONVENTION_LITERAL):
        self.mc = mc
        self.constants = constants
        self.convention = convention

        grid: DirectionGrid = mc.direction_grid
        directions = grid.directions()
        theta_hat, phi_hat = _polarizations(directions)

        # order: n slowest, then direction, then polarization
        n_dirs = grid.size
        self._n = np.repeat(np.arange(1, mc.n_max + 1, dtype=float), 2 * n_dirs)
        self._k = np.tile(np.repeat(directions, 2, axis=0), (mc.n_max, 1))
        electric = np.empty((2 * n_dirs, 3))
        electric[0::2] = theta_hat
        electric[1::2] = phi_hat
        self._electric = np.tile(electric, (mc.n_max, 1))
        self._magnetic = np.cross(self._k, self._electric)
        self._weights = np.tile(np.repeat(grid.weights, 2), mc.n_max)
        logger.debug(f"🔧  Monte-Carlo field with {self._n.size} modes "
                     f"(n_max={mc.n_max}, {n_dirs} directions)")

    @property
    def n_modes(self) -> int:
        return int(self._n.size)

    def _amplitudes(self, kin: RotationKinematics) -> np.ndarray:
        norm = mode_density_normalization(kin, self.constants or kin.constants, self.convention)
        return np.sqrt(norm * self._n ** 3 * self._weights)

    def _projection(self, field: str, index: int, t: float, kin: RotationKinematics) -> np.ndarray:
        """Field component of every mode in the comoving frame at lab time t"""
        e1, e2, e3 = comoving_axes(t, kin)
        beta = kin.beta
        gamma = kin.gamma
        if field == FIELD_ELECTRIC:
            main, other, sign = self._electric, self._magnetic, 1.0
        else:
            main, other, sign = self._magnetic, self._electric, -1.0
        if index == 1:
            return gamma * (main @ e1 + sign * beta * (other @ e3))
        if index == 2:
            return main @ e2
        return gamma * (main @ e3 - sign * beta * (other @ e1))

    def _phases(self, t: float, kin: RotationKinematics) -> np.ndarray:
        """n k0 k.x(t) - n Omega t for every mode"""
        c = (self.constants or kin.constants).c
        position = np.array(detector_worldline_lab(t, kin).position)
        k0 = kin.omega / c
        return self._n * (k0 * (self._k @ position) - kin.omega * t)

    def _weighted_modes(self, spec: CFComponentSpec, tau1: float, tau2: float,
                        kin: RotationKinematics) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        pair = ProperTimePair(tau1, tau2, kin)
        amplitudes = self._amplitudes(kin)
        proj_a = amplitudes * self._projection(spec.field_a, spec.index_a, pair.t1, kin)
        proj_b = amplitudes * self._projection(spec.field_b, spec.index_b, pair.t2, kin)
        return proj_a, self._phases(pair.t1, kin), proj_b, self._phases(pair.t2, kin)

    def expected_value(self, spec: CFComponentSpec, tau1: float, tau2: float,
                       kin: RotationKinematics) -> float:
        """Exact ensemble mean, sum_m A_m^2 P_a P_b cos(phase2 - phase1) / 2"""
        proj_a, phase1, proj_b, phase2 = self._weighted_modes(spec, tau1, tau2, kin)
        return 0.5 * math.fsum(proj_a * proj_b * np.cos(phase2 - phase1))

    def _stream(self, block: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.mc.seed, spawn_key=(block,))
        return np.random.Generator(np.random.Philox(sequence))

    def _blocks(self, ensembles: int):
        chunk = self.mc.chunk_size
        for block, start in enumerate(range(0, ensembles, chunk)):
            yield block, min(chunk, ensembles - start)

    def sample_products(self, spec: CFComponentSpec, tau1: float, tau2: float,
                        kin: RotationKinematics) -> np.ndarray:
        """Per-ensemble products field_a(tau1) * field_b(tau2)"""
        proj_a, phase1, proj_b, phase2 = self._weighted_modes(spec, tau1, tau2, kin)
        a_cos, a_sin = proj_a * np.cos(phase1), proj_a * np.sin(phase1)
        b_cos, b_sin = proj_b * np.cos(phase2), proj_b * np.sin(phase2)

        products = np.empty(self.mc.ensembles)
        offset = 0
        for block, size in self._blocks(self.mc.ensembles):
            theta = self._stream(block).uniform(0.0, 2.0 * math.pi, size=(size, self.n_modes))
            cos_theta = np.cos(theta)
            sin_theta = np.sin(theta)
            # cos(phi - Theta) = cos(phi) cos(Theta) + sin(phi) sin(Theta)
            field_a = cos_theta @ a_cos + sin_theta @ a_sin
            field_b = cos_theta @ b_cos + sin_theta @ b_sin
            products[offset:offset + size] = field_a * field_b
            offset += size
        return products

    def estimate(self, spec: CFComponentSpec, tau1: float, tau2: float,
                 kin: RotationKinematics) -> CorrelationResult:
        """
        Ensemble mean with its standard error

        Args:
            spec: Component; its first field is sampled at tau1
            tau1: First proper time
            tau2: Second proper time
            kin: Rotation kinematics

        Returns:
            CorrelationResult with method monte_carlo; metadata carries the exact
            ensemble mean of the same truncated field
        """
        logger.debug(f"🎲  Sampling {spec.label} over {self.mc.ensembles} ensembles")
        products = self.sample_products(spec, tau1, tau2, kin)
        mean = float(np.mean(products))
        if products.size > 1:
            standard_error = float(np.std(products, ddof=1) / math.sqrt(products.size))
        else:
            standard_error = abs(mean)
        expected = self.expected_value(spec, tau1, tau2, kin)
        metadata = {
            "component": spec.label,
            "kin": kin.to_dict(),
            "tau1": tau1,
            "tau2": tau2,
            "mc": self.mc.to_dict(),
            "convention": self.convention,
            "expected_value": expected,
            "warnings": [],
        }
        if abs(mean - expected) > MC_SIGMA_BOUND * standard_error:
            metadata["warnings"].append(
                f"estimate deviates from the exact ensemble mean by more than {MC_SIGMA_BOUND} standard errors"
            )
        logger.debug(f"✅  MC {spec.label}: {mean} +- {standard_error} (exact {expected})")
        return CorrelationResult(value=mean, method=METHOD_MONTE_CARLO,
                                 error_estimate=standard_error, metadata=metadata)

    def phase_correlator_check(self, n_modes: int = DEFAULT_PHASE_CHECK_MODES,
                               ensembles: Optional[int] = None) -> Dict[str, Any]:
        """
        Sample <cos(Theta_i) cos(Theta_j)> over the ensemble

        The target is delta_ij / 2; passed is True when every entry lies within
        MC_SIGMA_BOUND standard errors of it.
        """
        if n_modes < 1:
            raise DomainError(f"n_modes must be at least 1, got {n_modes}")
        ensembles = ensembles or self.mc.ensembles
        cosines = np.concatenate([
            np.cos(self._stream(block).uniform(0.0, 2.0 * math.pi, size=(size, n_modes)))
            for block, size in self._blocks(ensembles)
        ])
        products = cosines[:, :, None] * cosines[:, None, :]
        means = products.mean(axis=0)
        errors = products.std(axis=0, ddof=1) / math.sqrt(ensembles)
        target = 0.5 * np.eye(n_modes)
        within = np.abs(means - target) <= MC_SIGMA_BOUND * errors
        return {
            "n_modes": n_modes,
            "ensembles": ensembles,
            "means": means.tolist(),
            "standard_errors": errors.tolist(),
            "target": target.tolist(),
            "passed": bool(np.all(within)),
        }


def mc_zero_point_cf(spec: Union[CFComponentSpec, str], tau1: float, tau2: float,
                     kin: RotationKinematics, mc: Optional[McFieldSpec] = None,
                     config: Optional[RunConfig] = None) -> CorrelationResult:
    """Monte-Carlo estimate of one correlation component"""
    config = config or RunConfig()
    if isinstance(spec, str):
        spec = CFComponentSpec.parse(spec)
    if mc is None:
        settings = config.monte_carlo
        mc = McFieldSpec(
            n_max=settings.n_max,
            direction_grid=DirectionGrid.gauss_product(settings.n_theta, settings.n_phi),
            ensembles=settings.ensembles,
            seed=config.seed,
            chunk_size=settings.chunk_size,
        )
    sampler = MonteCarloSampler(mc, kin.constants, config.normalization.discrete_em_convention)
    return sampler.estimate(spec, tau1, tau2, kin)
