#!/usr/bin/env python3
# src/models/bogolubov.py

import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from constants import NATURAL_SPEED_OF_LIGHT
from errors import DomainError


@dataclass(frozen=True)
class ModeVector:
    """Plane-wave mode wave vector with omega = c |k|"""

    k1: float
    k2: float
    k3: float
    c: float = NATURAL_SPEED_OF_LIGHT

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.k1, self.k2, self.k3)):
            raise DomainError(f"Wave vector must be finite: {self.as_tuple()}")

    @property
    def norm(self) -> float:
        return math.sqrt(self.k1 ** 2 + self.k2 ** 2 + self.k3 ** 2)

    @property
    def omega(self) -> float:
        return self.c * self.norm

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.k1, self.k2, self.k3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def __neg__(self) -> 'ModeVector':
        return ModeVector(-self.k1, -self.k2, -self.k3, self.c)

    def to_dict(self) -> Dict[str, Any]:
        return {"k1": self.k1, "k2": self.k2, "k3": self.k3, "omega": self.omega}


@dataclass(frozen=True)
class BogolubovSupport:
    """Where beta_{k k'} is supported for a given k' and frame angle"""

    kprime: ModeVector
    delta_t: float
    k_on_support: ModeVector
    omega_kappa: float
    residuals: Tuple[float, float, float]

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kprime": self.kprime.to_dict(),
            "delta_t": self.delta_t,
            "k_on_support": self.k_on_support.to_dict(),
            "omega_kappa": self.omega_kappa,
            "residuals": list(self.residuals),
        }
