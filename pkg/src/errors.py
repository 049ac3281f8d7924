#!/usr/bin/env python3
# src/errors.py
"""
Exception hierarchy shared by services and the command line
"""

from typing import Any, Dict, Optional


class RotatingZpfError(Exception):
    """Base class for every error raised by the package"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DomainError(RotatingZpfError, ValueError):
    """Physical input outside the domain of a formula"""


class DivergenceError(DomainError):
    """Coincident times where a closed form diverges"""


class UnsupportedComponentError(DomainError):
    """Correlation component without an analytic integrand"""


class NumericConvergenceError(RotatingZpfError, ArithmeticError):
    """Quadrature or extrapolation failed to converge"""


class ConfigError(RotatingZpfError, ValueError):
    """Invalid run configuration"""


class UsageError(RotatingZpfError):
    """Bad command line usage"""
