#!/usr/bin/env python3
# src/services/kinematics.py
"""
Reference systems of the rotating detector

Each proper time tau has an inertial frame mu(tau) momentarily at rest with the
detector and a lab-rest frame lambda(tau) coinciding with it. The boost between
them carries a per-tau shift constant a_tau so that the detector event of mu(tau)
lands on the lab time gamma * tau.
"""

import logging
import math
from typing import Tuple

import numpy as np

from constants import FRAME_LAB, FRAME_MU, FRAME_LAMBDA
from errors import DomainError
from models.kinematics import (
    FrameTag, HyperbolicCoordinates, MuFrameCoordinates, PhysicalConstants,
    RotationKinematics, SpacetimeEvent,
)

logger = logging.getLogger("kinematics")


def gamma_factor(beta: float) -> float:
    """
    Lorentz factor of a dimensionless speed

    Args:
        beta: Speed in units of c, 0 <= beta < 1

    Returns:
        (1 - beta^2)^(-1/2)
    """
    if not 0.0 <= beta < 1.0:
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    return 1.0 / math.sqrt(1.0 - beta * beta)


def _check_speed(v: float, constants: PhysicalConstants) -> float:
    beta = abs(v) / constants.c
    if beta >= 1.0:
        raise DomainError(f"Boost speed must stay below c, got |v|/c={beta}")
    return 1.0 / math.sqrt(1.0 - beta * beta)


def modified_lorentz_to_lab(event_mu: SpacetimeEvent, v: float, a_tau: float,
                            constants: PhysicalConstants = PhysicalConstants.natural()) -> SpacetimeEvent:
    """
    Boost an event of mu(tau) into lambda(tau) with the shift constant a_tau

    Args:
        event_mu: Event tagged mu(tau)
        v: Boost velocity along x2
        a_tau: Shift added to x2 after the boost (usually -v * gamma * tau)
        constants: Unit system

    Returns:
        The event tagged lambda(tau)
    """
    if event_mu.frame_tag.kind != FRAME_MU:
        raise DomainError(f"Expected an event in a mu frame, got {event_mu.frame_tag}")
    gamma = _check_speed(v, constants)
    c2 = constants.c ** 2
    x2 = (event_mu.x2 + v * event_mu.t) * gamma + a_tau
    t = (event_mu.t + v * event_mu.x2 / c2) * gamma
    return SpacetimeEvent(event_mu.x1, x2, event_mu.x3, t, FrameTag.lam(event_mu.frame_tag.tau))


def lorentz_lab_to_mu(event_lambda: SpacetimeEvent, v: float, a_tau: float,
                      constants: PhysicalConstants = PhysicalConstants.natural()) -> SpacetimeEvent:
    """Inverse of modified_lorentz_to_lab"""
    if event_lambda.frame_tag.kind != FRAME_LAMBDA:
        raise DomainError(f"Expected an event in a lambda frame, got {event_lambda.frame_tag}")
    gamma = _check_speed(v, constants)
    shifted = event_lambda.x2 - a_tau
    x2 = gamma * (shifted - v * event_lambda.t)
    t = gamma * (event_lambda.t - v * shifted / constants.c ** 2)
    return SpacetimeEvent(event_lambda.x1, x2, event_lambda.x3, t, FrameTag.mu(event_lambda.frame_tag.tau))


def interval_mu(event_mu: SpacetimeEvent, tau: float,
                constants: PhysicalConstants = PhysicalConstants.natural()) -> float:
    """(x2)^2 - c^2 (t - tau)^2 in the mu frame"""
    return event_mu.x2 ** 2 - constants.c ** 2 * (event_mu.t - tau) ** 2


def interval_lambda(event_lambda: SpacetimeEvent, tau: float, gamma: float,
                    constants: PhysicalConstants = PhysicalConstants.natural()) -> float:
    """(x2)^2 - c^2 (t - gamma tau)^2 in the lambda frame"""
    return event_lambda.x2 ** 2 - constants.c ** 2 * (event_lambda.t - gamma * tau) ** 2


def detector_worldline_lab(t: float, kin: RotationKinematics) -> SpacetimeEvent:
    """
    Lab position of the detector at lab time t

    The detector starts at the lab origin and circles the center (-r, 0, 0).
    """
    phase = kin.omega * t
    return SpacetimeEvent(
        kin.r * (math.cos(phase) - 1.0),
        kin.r * math.sin(phase),
        0.0,
        t,
        FrameTag.lab(),
    )


def detector_velocity_lab(t: float, kin: RotationKinematics) -> Tuple[float, float, float]:
    phase = kin.omega * t
    return (-kin.v * math.sin(phase), kin.v * math.cos(phase), 0.0)


def comoving_axes(t: float, kin: RotationKinematics) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Lab components of the spatial axes of mu_t

    Returns:
        Tuple (e1, e2, e3): radial-like axis, velocity direction, rotation axis
    """
    phase = kin.omega * t
    e1 = np.array([math.cos(phase), math.sin(phase), 0.0])
    e2 = np.array([-math.sin(phase), math.cos(phase), 0.0])
    e3 = np.array([0.0, 0.0, 1.0])
    return e1, e2, e3


def mu_frame_coords(event_lab: SpacetimeEvent, t_frame: float,
                    kin: RotationKinematics) -> MuFrameCoordinates:
    """
    Closed-form coordinates of a lab event in the frame mu_t

    Args:
        event_lab: Event with lab coordinates
        t_frame: Lab time labelling the frame mu_t
        kin: Rotation kinematics

    Returns:
        MuFrameCoordinates (xi1, xi2, xi3, eta)
    """
    if event_lab.frame_tag.kind != FRAME_LAB:
        raise DomainError(f"Expected a lab event, got {event_lab.frame_tag}")
    c2 = kin.constants.c ** 2
    gamma = kin.gamma
    v = kin.v
    r = kin.r
    delta = kin.omega * t_frame
    a_tau = -v * t_frame
    sin_d = math.sin(delta)
    cos_d = math.cos(delta)
    x1, x2, x3, t = event_lab.as_tuple()

    xi1 = x1 * cos_d + x2 * sin_d - 2.0 * r * math.sin(delta / 2.0) ** 2
    xi2 = (-x1 * gamma * sin_d + x2 * gamma * cos_d - v * gamma * t
           - (r * sin_d + a_tau) * gamma)
    xi3 = x3
    eta = (x1 * (v / c2) * gamma * sin_d - x2 * (v / c2) * gamma * cos_d + gamma * t
           + (r * sin_d + a_tau) * (v / c2) * gamma)
    return MuFrameCoordinates(xi1, xi2, xi3, eta)


def mu_frame_coords_stepwise(event_lab: SpacetimeEvent, t_frame: float,
                             kin: RotationKinematics) -> MuFrameCoordinates:
    """Shift to the detector, rotate into the comoving axes, then undo the modified boost"""
    if event_lab.frame_tag.kind != FRAME_LAB:
        raise DomainError(f"Expected a lab event, got {event_lab.frame_tag}")
    origin = detector_worldline_lab(t_frame, kin)
    shifted = np.array(event_lab.position) - np.array(origin.position)
    e1, e2, _ = comoving_axes(t_frame, kin)
    tau = t_frame / kin.gamma
    in_lambda = SpacetimeEvent(
        float(shifted @ e1), float(shifted @ e2), float(shifted[2]), event_lab.t, FrameTag.lam(tau)
    )
    in_mu = lorentz_lab_to_mu(in_lambda, kin.v, -kin.v * t_frame, kin.constants)
    return MuFrameCoordinates(in_mu.x1, in_mu.x2, in_mu.x3, in_mu.t)


def hyperbolic_coords(tau: float, a: float,
                      constants: PhysicalConstants = PhysicalConstants.natural()) -> HyperbolicCoordinates:
    """
    Uniformly accelerated detector against the frame-mapped coordinates

    Args:
        tau: Proper time
        a: Proper acceleration, must be positive
        constants: Unit system

    Returns:
        HyperbolicCoordinates(X*, t*, x*tau, t*tau)
    """
    if not a > 0:
        raise DomainError(f"Proper acceleration must be positive, got {a}")
    c = constants.c
    rapidity = a * tau / c
    return HyperbolicCoordinates(
        x_star=(c ** 2 / a) * (math.cosh(rapidity) - 1.0),
        t_star=(c / a) * math.sinh(rapidity),
        x_star_tau=c * tau * math.sinh(rapidity),
        t_star_tau=tau * math.cosh(rapidity),
    )


def hyperbolic_shift_distance(tau1: float, tau2: float, a: float,
                              constants: PhysicalConstants = PhysicalConstants.natural()) -> float:
    """Distance X*(tau2) - X*(tau1) between the two accelerated positions"""
    first = hyperbolic_coords(tau1, a, constants)
    second = hyperbolic_coords(tau2, a, constants)
    distance = second.x_star - first.x_star
    logger.debug(f"📏  Hyperbolic shift between tau={tau1} and tau={tau2}: {distance}")
    return distance
