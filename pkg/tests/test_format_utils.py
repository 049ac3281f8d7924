#!/usr/bin/env python3
# tests/test_format_utils.py

import csv
import io
import json
import math

import numpy as np
import pytest

from constants import (
    DIMENSION_EM_CORRELATION, DIMENSION_SCALAR_CORRELATION, DIMENSION_TEMPERATURE, FORMAT_CSV, FORMAT_JSON,
)
from errors import UsageError
from models.correlation import CorrelationResult
from services.spectral_regularization import t_rot
from utils.format_utils import UnitSystem, flatten_payload, format_payload, to_jsonable


def test_to_jsonable_converts_numpy_and_special_values():
    payload = {
        "array": np.array([1.0, 2.0]),
        "count": np.int64(3),
        "flag": np.bool_(True),
        "missing": float("nan"),
        "amplitude": 1.5 - 0.5j,
        "result": CorrelationResult(value=0.25, method="closed_form"),
    }
    converted = to_jsonable(payload)
    assert converted["array"] == [1.0, 2.0]
    assert converted["count"] == 3 and isinstance(converted["count"], int)
    assert converted["flag"] is True
    assert converted["missing"] is None
    assert converted["amplitude"] == {"real": 1.5, "imag": -0.5}
    assert converted["result"]["value"] == 0.25


def test_flatten_payload_uses_dotted_keys():
    rows = flatten_payload({"a": {"b": 1, "c": [2, 3]}, "d": [], "e": None})
    assert rows == [("a.b", 1), ("a.c.0", 2), ("a.c.1", 3), ("d", ""), ("e", "")]


def test_csv_carries_the_json_numbers():
    payload = {"value": -0.30741812345678901, "metadata": {"tau1": 0.0, "tau2": 1.0}}
    as_json = json.loads(format_payload(payload, FORMAT_JSON))
    rows = dict(csv.reader(io.StringIO(format_payload(payload, FORMAT_CSV))))
    assert float(rows["value"]) == as_json["value"]
    assert float(rows["metadata.tau2"]) == 1.0
    assert rows["key"] == "value"


def test_unknown_format_is_a_usage_error():
    with pytest.raises(UsageError):
        format_payload({}, "xml")


def test_rotation_temperature_converts_to_natural_units(si):
    temperature = t_rot(1e11, si).t_rot
    assert UnitSystem().to_natural(temperature, DIMENSION_TEMPERATURE) == pytest.approx(
        1e11 / (2.0 * math.pi), rel=1e-12)


def test_unit_round_trip_and_sizes(si):
    units = UnitSystem()
    assert units.natural_unit_size(DIMENSION_SCALAR_CORRELATION) == pytest.approx(si.hbar / si.c, rel=1e-15)
    value = 3.7e-20
    assert units.to_si(units.to_natural(value, DIMENSION_EM_CORRELATION), DIMENSION_EM_CORRELATION) == \
        pytest.approx(value, rel=1e-14)
    with pytest.raises(UsageError):
        units.natural_unit_size((1, 0, 0))
