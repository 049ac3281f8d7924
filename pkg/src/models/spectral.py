#!/usr/bin/env python3
# src/models/spectral.py

from dataclasses import dataclass, asdict
from typing import Any, Dict


@dataclass(frozen=True)
class AbelPlanaSplit:
    """
    Regularized mode sum sum_n n^p cos(nF) split into vacuum and thermal parts

    The vacuum part is the formal divergent integral int_0^inf x^p cos(xF) dx;
    vacuum_value is its regularized value at the principal phase, reported for
    bookkeeping only. thermal_value carries its sign (+ for p=3, - for p=1).
    """

    power: int
    phase: float
    principal_phase: float
    vacuum_coefficient: float
    vacuum_value: float
    thermal_value: float
    thermal_sign: int
    total_closed_form: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class RotationTemperature:
    """Effective temperature hbar Omega / (2 pi k_B) of the rotating detector"""

    t_rot: float
    omega: float
    units: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class EnergyDensity:
    """Regularized energy density at the detector and its blackbody reference"""

    value: float
    w_rad: float
    anisotropy_factor: float
    t_rot: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class PlanckComparison:
    """
    Both sides of the zero-point plus Planck spectral identity at a common regulator

    lhs: int w^3 coth(hbar w / 2 k_B T) cos(w t) e^(-eps w) dw
    rhs: int w^3 cos(w t) e^(-eps w) dw + thermal part at the same eps
    thermal_term: unregulated 2 int w^3 cos(w t) / (e^(hbar w / k_B T) - 1) dw
    """

    temperature: float
    time: float
    epsilon: float
    lhs: float
    rhs: float
    thermal_term: float

    @property
    def relative_difference(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs), 1e-300)
        return abs(self.lhs - self.rhs) / scale

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["relative_difference"] = self.relative_difference
        return result


@dataclass(frozen=True)
class SpectrumRow:
    """One discrete mode of the rotating detector spectrum"""

    n: int
    omega_n: float
    occupation: float
    thermal_weight: float
    zero_point_weight: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
