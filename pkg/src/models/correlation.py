#!/usr/bin/env python3
# src/models/correlation.py

import logging
import math
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple

import numpy as np

from constants import (
    METHOD_CLOSED_FORM, VALID_METHODS, VALID_MONOMIALS, VALID_FIELDS, VALID_FIELD_INDICES,
)
from errors import DomainError
from models.kinematics import PhysicalConstants

logger = logging.getLogger("correlation_models")

_COMPONENT_PATTERN = re.compile(r'^([EH])([123])([EH])([123])$')


@dataclass(frozen=True)
class CFComponentSpec:
    """Which two field components are correlated, e.g. E1E2"""

    field_a: str
    index_a: int
    field_b: str
    index_b: int

    def __post_init__(self):
        if self.field_a not in VALID_FIELDS or self.field_b not in VALID_FIELDS:
            raise DomainError(f"Field must be one of {VALID_FIELDS}: {self.field_a}, {self.field_b}")
        if self.index_a not in VALID_FIELD_INDICES or self.index_b not in VALID_FIELD_INDICES:
            raise DomainError(f"Index must be one of {VALID_FIELD_INDICES}: {self.index_a}, {self.index_b}")

    @classmethod
    def parse(cls, label: str) -> 'CFComponentSpec':
        """
        Build a spec from a label such as "E1E1" or "H1H1"

        Args:
            label: Component label

        Returns:
            CFComponentSpec instance
        """
        match = _COMPONENT_PATTERN.match(label.strip().upper())
        if not match:
            raise DomainError(f"Cannot parse correlation component: {label!r}")
        field_a, index_a, field_b, index_b = match.groups()
        return cls(field_a, int(index_a), field_b, int(index_b))

    @property
    def label(self) -> str:
        return f"{self.field_a}{self.index_a}{self.field_b}{self.index_b}"

    def swapped(self) -> 'CFComponentSpec':
        return CFComponentSpec(self.field_b, self.index_b, self.field_a, self.index_a)

    def __str__(self) -> str:
        return self.label


@dataclass
class MonomialCoefficients:
    """
    Integrand polynomial in the unit wave vector components

    Keys are monomial names from VALID_MONOMIALS (e.g. "ky_kz2" for ky * kz^2).
    """

    coefficients: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        unknown = [name for name in self.coefficients if name not in VALID_MONOMIALS]
        if unknown:
            raise DomainError(f"Unknown monomials {unknown}, allowed: {VALID_MONOMIALS}")
        self.coefficients = {name: float(value) for name, value in self.coefficients.items()}

    def __getitem__(self, name: str) -> float:
        return self.coefficients.get(name, 0.0)

    def __iter__(self) -> Iterator[Tuple[str, float]]:
        return iter(self.coefficients.items())

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: 'MonomialCoefficients') -> 'MonomialCoefficients':
        merged = dict(self.coefficients)
        for name, value in other:
            merged[name] = merged.get(name, 0.0) + value
        return MonomialCoefficients(merged)

    def scaled(self, factor: float) -> 'MonomialCoefficients':
        return MonomialCoefficients({name: factor * value for name, value in self})

    def __neg__(self) -> 'MonomialCoefficients':
        return self.scaled(-1.0)

    @property
    def is_empty(self) -> bool:
        return all(value == 0.0 for _, value in self)

    def to_dict(self) -> Dict[str, float]:
        return dict(self.coefficients)


@dataclass(frozen=True)
class AngularWeight:
    """The constant k = -beta sinc(delta/2) and the per-direction b = k sin(theta)"""

    kparam: float

    def __post_init__(self):
        if abs(self.kparam) >= 1.0:
            raise DomainError(f"|kparam| must stay below 1, got {self.kparam}")

    def b(self, theta: float) -> float:
        return self.kparam * math.sin(theta)


@dataclass(frozen=True)
class SpectralAmplitude:
    """Squared spectral amplitudes of the zero-point fields"""

    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def h0sq(self, omega: float) -> float:
        """Electromagnetic amplitude hbar omega / (2 pi^2)"""
        return self.constants.hbar * omega / (2.0 * math.pi ** 2)

    def fsq(self, omega: float) -> float:
        """Scalar amplitude hbar c^2 / (2 pi^2 omega)"""
        if omega <= 0:
            raise DomainError(f"Scalar amplitude needs omega > 0, got {omega}")
        return self.constants.hbar * self.constants.c ** 2 / (2.0 * math.pi ** 2 * omega)


@dataclass(frozen=True)
class VacuumPart:
    """
    Formal divergent part of a discrete-mode sum

    Never a number: coefficient multiplies the formal integral named in description.
    """

    power: int
    coefficient: float
    description: str

    def to_dict(self) -> Dict[str, Any]:
        return {"power": self.power, "coefficient": self.coefficient, "description": self.description}


@dataclass
class CorrelationResult:
    """Value of a two-point correlator with its provenance"""

    value: float
    method: str
    error_estimate: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in VALID_METHODS:
            raise DomainError(f"Unknown method: {self.method}, must be one of {VALID_METHODS}")
        self.value = float(self.value)
        self.error_estimate = abs(float(self.error_estimate))
        if self.method == METHOD_CLOSED_FORM:
            if self.error_estimate != 0.0:
                logger.warning(f"Closed-form result carried an error estimate {self.error_estimate}; dropped")
            self.error_estimate = 0.0
        elif self.error_estimate == 0.0:
            # Numerical results always report a nonzero uncertainty
            self.error_estimate = np.finfo(float).eps * max(abs(self.value), np.finfo(float).tiny)

    @property
    def warnings(self) -> list:
        return self.metadata.setdefault("warnings", [])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "method": self.method,
            "error_estimate": self.error_estimate,
            "metadata": self.metadata,
        }


def merge_metadata(*parts: Optional[Mapping[str, Any]]) -> Dict[str, Any]:
    merged: Dict[str, Any] = {"warnings": []}
    for part in parts:
        if not part:
            continue
        for key, value in part.items():
            if key == "warnings":
                merged["warnings"].extend(value)
            else:
                merged[key] = value
    return merged
