#!/usr/bin/env python3
# tests/conftest.py

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from config.settings import RunConfig  # noqa: E402
from models.kinematics import PhysicalConstants, RotationKinematics  # noqa: E402


@pytest.fixture
def natural():
    return PhysicalConstants.natural()


@pytest.fixture
def si():
    return PhysicalConstants.si()


@pytest.fixture
def kin():
    """Omega = 1, r = 0.5 in natural units: beta = 0.5"""
    return RotationKinematics(omega=1.0, r=0.5)


@pytest.fixture
def inertial():
    return RotationKinematics(omega=1.0, r=0.0)


@pytest.fixture
def config():
    return RunConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
