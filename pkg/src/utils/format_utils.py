#!/usr/bin/env python3
# src/utils/format_utils.py

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from constants import FORMAT_CSV, FORMAT_JSON, VALID_OUTPUT_FORMATS
from errors import UsageError
from models.kinematics import PhysicalConstants

logger = logging.getLogger("format_utils")


def to_jsonable(value: Any) -> Any:
    """
    Convert a payload into plain JSON types

    numpy scalars and arrays become Python numbers and lists, objects with
    to_dict() are expanded, and non-finite floats become None.
    """
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    return value


def format_json(payload: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(payload), indent=2)


def flatten_payload(payload: Any, prefix: str = "") -> List[Tuple[str, Any]]:
    """
    Flatten nested dicts and lists into dotted key paths

    Args:
        payload: JSON-compatible payload
        prefix: Key path of the current level

    Returns:
        List of (key, value) rows in payload order
    """
    rows: List[Tuple[str, Any]] = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            rows.extend(flatten_payload(value, f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(payload, list):
        if not payload:
            rows.append((prefix, ""))
        for index, value in enumerate(payload):
            rows.extend(flatten_payload(value, f"{prefix}.{index}" if prefix else str(index)))
    else:
        rows.append((prefix, "" if payload is None else payload))
    return rows


def format_csv(payload: Dict[str, Any]) -> str:
    """key,value rows carrying the same numbers as the JSON form"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in flatten_payload(to_jsonable(payload)):
        writer.writerow([key, repr(value) if isinstance(value, float) else value])
    return buffer.getvalue()


def format_payload(payload: Dict[str, Any], output_format: str = FORMAT_JSON) -> str:
    if output_format not in VALID_OUTPUT_FORMATS:
        raise UsageError(f"Unknown output format: {output_format}, must be one of {VALID_OUTPUT_FORMATS}")
    logger.debug(f"📋  Serializing payload as {output_format}")
    if output_format == FORMAT_CSV:
        return format_csv(payload)
    return format_json(payload)


@dataclass(frozen=True)
class UnitSystem:
    """
    Conversion between SI and natural units (hbar = c = k_B = 1, time in seconds)

    A dimension is the exponent tuple (energy, length, time, temperature). The SI
    size of the natural unit of that dimension is the product of the base sizes.
    """

    si: PhysicalConstants = field(default_factory=PhysicalConstants.si)

    @property
    def base_sizes(self) -> Tuple[float, float, float, float]:
        """SI sizes of the natural energy, length, time and temperature units"""
        second = 1.0
        energy = self.si.hbar / second
        return (energy, self.si.c * second, second, energy / self.si.k_B)

    def natural_unit_size(self, dimension: Tuple[int, int, int, int]) -> float:
        if len(dimension) != 4:
            raise UsageError(f"Dimension must have four exponents, got {dimension}")
        return math.prod(size ** power for size, power in zip(self.base_sizes, dimension))

    def to_natural(self, value: float, dimension: Tuple[int, int, int, int]) -> float:
        return value / self.natural_unit_size(dimension)

    def to_si(self, value: float, dimension: Tuple[int, int, int, int]) -> float:
        return value * self.natural_unit_size(dimension)
