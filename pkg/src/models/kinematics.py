#!/usr/bin/env python3
# src/models/kinematics.py

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from constants import (
    FRAME_LAB, FRAME_LAMBDA, FRAME_MU, VALID_FRAMES,
    NATURAL_HBAR, NATURAL_SPEED_OF_LIGHT, NATURAL_BOLTZMANN,
    SI_HBAR, SI_SPEED_OF_LIGHT, SI_BOLTZMANN, UNITS_NATURAL, UNITS_SI,
)
from errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Physical constants of one unit system

    The Stefan-Boltzmann constant is always derived from the other three.
    """

    hbar: float
    c: float
    k_B: float
    units: str = UNITS_NATURAL

    def __post_init__(self):
        for name in ("hbar", "c", "k_B"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"Physical constant {name} must be positive, got {value}")

    @property
    def sigma(self) -> float:
        """Stefan-Boltzmann constant pi^2 k_B^4 / (60 hbar^3 c^2)"""
        return math.pi ** 2 * self.k_B ** 4 / (60.0 * self.hbar ** 3 * self.c ** 2)

    @classmethod
    def natural(cls) -> 'PhysicalConstants':
        return cls(NATURAL_HBAR, NATURAL_SPEED_OF_LIGHT, NATURAL_BOLTZMANN, UNITS_NATURAL)

    @classmethod
    def si(cls) -> 'PhysicalConstants':
        return cls(SI_HBAR, SI_SPEED_OF_LIGHT, SI_BOLTZMANN, UNITS_SI)


@dataclass(frozen=True)
class RotationKinematics:
    """
    Parameter pack of a detector on a circular orbit

    Attributes:
        omega: Angular velocity (rad / time)
        r: Orbit radius (length)
        constants: Unit system the two values are expressed in
    """

    omega: float
    r: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def __post_init__(self):
        if self.omega < 0 or not math.isfinite(self.omega):
            raise DomainError(f"Angular velocity must be non-negative, got {self.omega}")
        if self.r < 0 or not math.isfinite(self.r):
            raise DomainError(f"Orbit radius must be non-negative, got {self.r}")
        if self.beta >= 1.0:
            raise DomainError(
                f"Orbit speed must stay below c, got beta={self.beta}",
                {"omega": self.omega, "r": self.r},
            )

    @property
    def v(self) -> float:
        return self.omega * self.r

    @property
    def beta(self) -> float:
        return self.v / self.constants.c

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta ** 2)

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "r": self.r,
            "v": self.v,
            "beta": self.beta,
            "gamma": self.gamma,
            "units": self.constants.units,
        }


@dataclass(frozen=True)
class FrameTag:
    """Identifies the frame a set of coordinates lives in"""

    kind: str
    tau: Optional[float] = None

    def __post_init__(self):
        if self.kind not in VALID_FRAMES:
            raise DomainError(f"Unknown frame kind: {self.kind}, must be one of {VALID_FRAMES}")
        if self.kind != FRAME_LAB and self.tau is None:
            raise DomainError(f"Frame {self.kind} needs the proper time it belongs to")

    @classmethod
    def lab(cls) -> 'FrameTag':
        return cls(FRAME_LAB)

    @classmethod
    def mu(cls, tau: float) -> 'FrameTag':
        return cls(FRAME_MU, tau)

    @classmethod
    def lam(cls, tau: float) -> 'FrameTag':
        return cls(FRAME_LAMBDA, tau)

    def __str__(self) -> str:
        return self.kind if self.tau is None else f"{self.kind}({self.tau:g})"


@dataclass(frozen=True)
class SpacetimeEvent:
    """An event with the frame its coordinates belong to"""

    x1: float
    x2: float
    x3: float
    t: float
    frame_tag: FrameTag = field(default_factory=FrameTag.lab)

    def __post_init__(self):
        if not all(math.isfinite(value) for value in (self.x1, self.x2, self.x3, self.t)):
            raise DomainError(f"Event coordinates must be finite: {self.as_tuple()}")

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.t)

    @property
    def position(self) -> Tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def to_dict(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "x3": self.x3, "t": self.t, "frame": str(self.frame_tag)}


@dataclass(frozen=True)
class ProperTimePair:
    """Two detector proper times and the lab quantities derived from them"""

    tau1: float
    tau2: float
    kin: RotationKinematics

    @property
    def dtau(self) -> float:
        return self.tau2 - self.tau1

    @property
    def dt(self) -> float:
        return self.kin.gamma * self.dtau

    @property
    def delta(self) -> float:
        return self.kin.omega * self.dt

    @property
    def t1(self) -> float:
        return self.kin.gamma * self.tau1

    @property
    def t2(self) -> float:
        return self.kin.gamma * self.tau2


@dataclass(frozen=True)
class HyperbolicCoordinates:
    """Coordinates of a uniformly accelerated detector and their frame-mapped counterparts"""

    x_star: float
    t_star: float
    x_star_tau: float
    t_star_tau: float

    def to_dict(self) -> dict:
        return {
            "X_star": self.x_star,
            "t_star": self.t_star,
            "x_star_tau": self.x_star_tau,
            "t_star_tau": self.t_star_tau,
        }


@dataclass(frozen=True)
class MuFrameCoordinates:
    xi1: float
    xi2: float
    xi3: float
    eta: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.xi1, self.xi2, self.xi3, self.eta)

    def to_dict(self) -> dict:
        return {"xi1": self.xi1, "xi2": self.xi2, "xi3": self.xi3, "eta": self.eta}
