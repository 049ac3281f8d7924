#!/usr/bin/env python3
# src/utils/numeric_utils.py

import logging
import math
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from constants import QUAD_ROUNDOFF_FACTOR, TWO_PI
from errors import DomainError, NumericConvergenceError

logger = logging.getLogger("numeric_utils")


def sinc(x):
    """Unnormalized sinc, sin(x)/x with sinc(0) = 1"""
    return np.sinc(np.asarray(x) / np.pi)


def richardson_extrapolate(hs: Sequence[float], values: Sequence[float],
                           order: int = None, check_monotone: bool = True) -> Tuple[float, float]:
    """
    Polynomial extrapolation of values(h) to h -> 0 (Neville tableau)

    Args:
        hs: Regulator values, strictly decreasing and positive
        values: Quantity evaluated at each regulator value
        order: Polynomial order, defaults to len(hs) - 1; uses the order + 1 smallest h
        check_monotone: Raise when successive differences grow instead of shrink

    Returns:
        Tuple of (extrapolated value, residual estimate)
    """
    hs = np.asarray(hs, dtype=float)
    values = np.asarray(values, dtype=float)
    if hs.shape != values.shape or hs.ndim != 1:
        raise DomainError("Regulator ladder and values must be 1-D arrays of equal length")
    if order is None:
        order = len(hs) - 1
    if order < 0 or len(hs) < order + 1:
        raise DomainError(f"Need at least {order + 1} ladder points, got {len(hs)}")
    if np.any(hs <= 0) or np.any(np.diff(hs) >= 0):
        raise DomainError(f"Regulator ladder must be positive and strictly decreasing: {hs}")
    if not np.all(np.isfinite(values)):
        raise NumericConvergenceError(
            "Non-finite value on the regulator ladder",
            {"ladder": hs.tolist(), "values": values.tolist()},
        )

    if check_monotone and len(values) >= 3:
        steps = np.abs(np.diff(values))
        scale = np.max(np.abs(values))
        floor = 1e-9 * scale
        growing = [i for i in range(1, len(steps)) if steps[i] > steps[i - 1] and steps[i] > floor]
        if growing:
            raise NumericConvergenceError(
                "Non-monotone approach along the regulator ladder",
                {"ladder": hs.tolist(), "values": values.tolist(), "growing_steps": growing},
            )

    h = hs[-(order + 1):]
    tableau = [values[-(order + 1):].copy()]
    for j in range(1, order + 1):
        previous = tableau[-1]
        current = np.empty(len(previous) - 1)
        for i in range(len(current)):
            h_far = h[i]
            h_near = h[i + j]
            current[i] = (h_far * previous[i + 1] - h_near * previous[i]) / (h_far - h_near)
        tableau.append(current)

    estimate = float(tableau[-1][-1])
    if order == 0:
        residual = float(abs(values[-1] - values[-2])) if len(values) > 1 else 0.0
    else:
        residual = float(abs(tableau[-1][-1] - tableau[-2][-1]))
    logger.debug(f"🔍  Richardson order {order} on {len(h)} points -> {estimate} (residual {residual:.3e})")
    return estimate, residual


def periodic_nodes(n: int) -> np.ndarray:
    """Equispaced nodes on [0, 2 pi) for the periodic trapezoid rule"""
    return TWO_PI * np.arange(n) / n


def gauss_sphere_grid(n_theta: int, n_phi: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Product grid on the unit sphere: Gauss-Legendre in cos(theta), trapezoid in phi

    Returns:
        Tuple (kx, ky, kz, weights); weights sum to 4 pi
    """
    cos_theta, gl_weights = leggauss(n_theta)
    phi = periodic_nodes(n_phi)
    cos_grid, phi_grid = np.meshgrid(cos_theta, phi, indexing="ij")
    sin_grid = np.sqrt(1.0 - cos_grid ** 2)
    weights = np.outer(gl_weights, np.full(n_phi, TWO_PI / n_phi))
    return (
        (sin_grid * np.cos(phi_grid)).ravel(),
        (sin_grid * np.sin(phi_grid)).ravel(),
        cos_grid.ravel(),
        weights.ravel(),
    )


def integrate_with_error(func, lower: float, upper: float, settings, what: str,
                         scale: float = 0.0, **kwargs) -> Tuple[float, float]:
    """
    scipy.integrate.quad with a convergence check

    Args:
        func: Integrand
        lower: Lower limit
        upper: Upper limit (may be numpy.inf)
        settings: QuadratureSettings with epsabs, epsrel and limit
        what: Name of the integral for the error message
        scale: Magnitude of int |func|; the gate never asks for less than
            QUAD_ROUNDOFF_FACTOR machine epsilons of it
        **kwargs: Passed on to quad (points, weight, wvar)

    Returns:
        Tuple (value, error estimate)
    """
    value, error = quad(func, lower, upper, epsabs=settings.epsabs, epsrel=settings.epsrel,
                        limit=settings.limit, **kwargs)
    tolerance = max(
        10.0 * settings.epsabs,
        max(1e3 * settings.epsrel, 1e-7) * abs(value),
        QUAD_ROUNDOFF_FACTOR * np.finfo(float).eps * abs(scale),
    )
    if not math.isfinite(value) or error > tolerance:
        raise NumericConvergenceError(
            f"Quadrature for {what} did not converge",
            {"value": value, "error": error, "tolerance": tolerance},
        )
    return value, error


def integrate(func, lower: float, upper: float, settings, what: str, scale: float = 0.0, **kwargs) -> float:
    return integrate_with_error(func, lower, upper, settings, what, scale=scale, **kwargs)[0]
