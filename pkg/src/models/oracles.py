#!/usr/bin/env python3
# src/models/oracles.py

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from constants import (
    DEFAULT_EXTRAPOLATION_ORDER, DEFAULT_MC_ENSEMBLES, DEFAULT_MC_N_MAX,
    DEFAULT_MC_N_PHI, DEFAULT_MC_N_THETA, DEFAULT_SEED, DEFAULT_MC_CHUNK_SIZE,
)
from errors import DomainError
from utils.numeric_utils import gauss_sphere_grid

logger = logging.getLogger("oracle_models")


@dataclass(frozen=True)
class RegulatorLadder:
    """Descending regulator values and the Richardson order used on them"""

    values: Tuple[float, ...]
    extrapolation_order: int = DEFAULT_EXTRAPOLATION_ORDER

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 3:
            raise DomainError(f"Regulator ladder needs at least 3 values, got {len(values)}")
        if any(not (v > 0 and math.isfinite(v)) for v in values):
            raise DomainError(f"Regulator values must be positive and finite: {list(values)}")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise DomainError(f"Regulator ladder must be strictly decreasing: {list(values)}")
        if not 1 <= self.extrapolation_order <= len(values) - 1:
            raise DomainError(
                f"Extrapolation order {self.extrapolation_order} must lie between 1 and {len(values) - 1}"
            )

    @classmethod
    def scaled(cls, factors: Sequence[float], scale: float,
               order: int = DEFAULT_EXTRAPOLATION_ORDER) -> 'RegulatorLadder':
        """Ladder factor * scale for every factor"""
        return cls(tuple(f * scale for f in factors), order)

    def __len__(self) -> int:
        return len(self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {"values": list(self.values), "extrapolation_order": self.extrapolation_order}


@dataclass(frozen=True)
class DirectionGrid:
    """Quadrature nodes and weights on the unit sphere"""

    kx: np.ndarray
    ky: np.ndarray
    kz: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        shapes = {np.shape(a) for a in (self.kx, self.ky, self.kz, self.weights)}
        if len(shapes) != 1:
            raise DomainError(f"Direction grid arrays differ in shape: {shapes}")
        norm = self.kx ** 2 + self.ky ** 2 + self.kz ** 2
        if not np.allclose(norm, 1.0, atol=1e-12):
            raise DomainError("Direction grid nodes must be unit vectors")
        if abs(float(np.sum(self.weights)) - 4.0 * math.pi) > 1e-12 * 4.0 * math.pi:
            raise DomainError(f"Direction weights must sum to 4 pi, got {float(np.sum(self.weights))}")

    @classmethod
    def gauss_product(cls, n_theta: int = DEFAULT_MC_N_THETA,
                      n_phi: int = DEFAULT_MC_N_PHI) -> 'DirectionGrid':
        """Gauss-Legendre in cos(theta) times the periodic trapezoid in phi"""
        if n_theta < 1 or n_phi < 1:
            raise DomainError(f"Grid sizes must be positive, got n_theta={n_theta}, n_phi={n_phi}")
        kx, ky, kz, weights = gauss_sphere_grid(n_theta, n_phi)
        logger.debug(f"🔧  Built {n_theta}x{n_phi} direction grid")
        return cls(kx, ky, kz, weights)

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def directions(self) -> np.ndarray:
        """Unit vectors as an (n, 3) array"""
        return np.column_stack((self.kx, self.ky, self.kz))


@dataclass(frozen=True)
class McFieldSpec:
    """Random-phase field model sampled by the Monte-Carlo oracle"""

    n_max: int = DEFAULT_MC_N_MAX
    direction_grid: DirectionGrid = field(default_factory=DirectionGrid.gauss_product)
    ensembles: int = DEFAULT_MC_ENSEMBLES
    seed: int = DEFAULT_SEED
    chunk_size: int = DEFAULT_MC_CHUNK_SIZE

    def __post_init__(self):
        if self.n_max < 1:
            raise DomainError(f"n_max must be at least 1, got {self.n_max}")
        if self.ensembles < 1:
            raise DomainError(f"ensembles must be at least 1, got {self.ensembles}")
        if self.chunk_size < 1:
            raise DomainError(f"chunk_size must be at least 1, got {self.chunk_size}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"Seed must fit in 64 bits, got {self.seed}")

    @property
    def n_modes(self) -> int:
        """Modes per ensemble member: mode index times direction times polarization"""
        return self.n_max * self.direction_grid.size * 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_max": self.n_max,
            "directions": self.direction_grid.size,
            "ensembles": self.ensembles,
            "seed": self.seed,
            "chunk_size": self.chunk_size,
        }


@dataclass
class CheckResult:
    """One oracle-versus-closed-form comparison of the verification suite"""

    suite: str
    name: str
    passed: bool
    value: float = float("nan")
    reference: float = float("nan")
    tolerance: float = float("nan")
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "reference": self.reference,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    suite: str
    profile: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "profile": self.profile,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failures": len(self.failures),
            "checks": [check.to_dict() for check in self.checks],
        }
