#!/usr/bin/env python3
# src/config/settings.py

import json
import logging
import math
import os
import traceback
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from dotenv import load_dotenv

from constants import (
    DEFAULT_UNITS, VALID_UNITS, UNITS_SI, DEFAULT_SEED,
    DEFAULT_QUAD_EPSABS, DEFAULT_QUAD_EPSREL, DEFAULT_QUAD_LIMIT,
    DEFAULT_EPSILON_FACTORS, DEFAULT_ETA_FACTORS, DEFAULT_DAMPED_ETA_VALUES,
    DEFAULT_EXTRAPOLATION_ORDER,
    DEFAULT_DISCRETE_EM_CONVENTION, DEFAULT_SCALAR_PHASE_CONVENTION, VALID_CONVENTIONS,
    DEFAULT_MC_N_MAX, DEFAULT_MC_N_THETA, DEFAULT_MC_N_PHI, DEFAULT_MC_ENSEMBLES,
    DEFAULT_MC_CHUNK_SIZE,
    DEFAULT_LOG_DIR, DEFAULT_LOG_FILE, DEFAULT_LOG_BACKUP_COUNT, DEFAULT_LOG_MAX_SIZE_MB,
    DEFAULT_DEBUG_MODE, DEFAULT_LOG_TO_FILE,
)
from errors import ConfigError

logger = logging.getLogger("config")


@dataclass
class QuadratureSettings:
    """Tolerances handed to scipy.integrate.quad"""

    epsabs: float = DEFAULT_QUAD_EPSABS
    epsrel: float = DEFAULT_QUAD_EPSREL
    limit: int = DEFAULT_QUAD_LIMIT

    def __post_init__(self):
        logger.debug(f"🔧  Initialized QuadratureSettings: epsabs={self.epsabs}, "
                     f"epsrel={self.epsrel}, limit={self.limit}")
        if self.epsabs < 0 or self.epsrel < 0:
            logger.warning(f"Negative quadrature tolerance: epsabs={self.epsabs}, epsrel={self.epsrel}")

    def validate(self) -> List[str]:
        errors = []
        if self.epsabs < 0 or self.epsrel < 0 or (self.epsabs == 0 and self.epsrel == 0):
            errors.append(f"Quadrature tolerances must be non-negative and not both zero: "
                          f"epsabs={self.epsabs}, epsrel={self.epsrel}")
        if not isinstance(self.limit, int) or self.limit < 1:
            errors.append(f"Quadrature limit must be a positive integer, got {self.limit}")
        return errors


def _ladder_errors(name: str, values: Tuple[float, ...], minimum: int) -> List[str]:
    errors = []
    if len(values) < minimum:
        errors.append(f"{name} needs at least {minimum} values, got {len(values)}")
    if any(not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0) for v in values):
        errors.append(f"{name} must contain positive finite numbers: {list(values)}")
    elif any(b >= a for a, b in zip(values, values[1:])):
        errors.append(f"{name} must be strictly decreasing: {list(values)}")
    return errors


@dataclass
class RegulatorSettings:
    """
    Regulator ladders for the extrapolating oracles

    epsilon_factors scale the closest approach of the phase denominator,
    eta_factors scale the distance of F to the nearest pole of the mode sum and
    damped_eta_values are absolute damping values for the pole-subtracted sums.
    """

    epsilon_factors: Tuple[float, ...] = DEFAULT_EPSILON_FACTORS
    eta_factors: Tuple[float, ...] = DEFAULT_ETA_FACTORS
    damped_eta_values: Tuple[float, ...] = DEFAULT_DAMPED_ETA_VALUES
    extrapolation_order: int = DEFAULT_EXTRAPOLATION_ORDER

    def __post_init__(self):
        self.epsilon_factors = tuple(self.epsilon_factors)
        self.eta_factors = tuple(self.eta_factors)
        self.damped_eta_values = tuple(self.damped_eta_values)
        logger.debug(f"🔧  Initialized RegulatorSettings: epsilon={self.epsilon_factors}, "
                     f"order={self.extrapolation_order}")

    def validate(self) -> List[str]:
        errors = []
        errors.extend(_ladder_errors("epsilon_factors", self.epsilon_factors, 3))
        errors.extend(_ladder_errors("eta_factors", self.eta_factors, 3))
        errors.extend(_ladder_errors("damped_eta_values", self.damped_eta_values, 3))
        if not isinstance(self.extrapolation_order, int) or self.extrapolation_order < 1:
            errors.append(f"extrapolation_order must be a positive integer, got {self.extrapolation_order}")
        elif self.extrapolation_order > len(self.epsilon_factors) - 1:
            errors.append(f"extrapolation_order {self.extrapolation_order} needs "
                          f"{self.extrapolation_order + 1} epsilon factors")
        return errors


@dataclass
class NormalizationSettings:
    """Mode-density conventions of the discrete spectra"""

    discrete_em_convention: str = DEFAULT_DISCRETE_EM_CONVENTION
    scalar_phase_convention: str = DEFAULT_SCALAR_PHASE_CONVENTION

    def validate(self) -> List[str]:
        errors = []
        for name in ("discrete_em_convention", "scalar_phase_convention"):
            value = getattr(self, name)
            if value not in VALID_CONVENTIONS:
                errors.append(f"Invalid {name}: {value}, must be one of {VALID_CONVENTIONS}")
        return errors


@dataclass
class MonteCarloSettings:
    n_max: int = DEFAULT_MC_N_MAX
    n_theta: int = DEFAULT_MC_N_THETA
    n_phi: int = DEFAULT_MC_N_PHI
    ensembles: int = DEFAULT_MC_ENSEMBLES
    chunk_size: int = DEFAULT_MC_CHUNK_SIZE

    def validate(self) -> List[str]:
        errors = []
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value < 1:
                errors.append(f"monte_carlo.{f.name} must be a positive integer, got {value}")
        return errors


@dataclass
class LoggingSettings:
    """Application logging settings"""

    log_dir: str = DEFAULT_LOG_DIR
    log_file: str = DEFAULT_LOG_FILE
    backup_count: int = DEFAULT_LOG_BACKUP_COUNT
    max_size_mb: int = DEFAULT_LOG_MAX_SIZE_MB
    debug_mode: bool = DEFAULT_DEBUG_MODE
    log_to_file: bool = DEFAULT_LOG_TO_FILE

    def __post_init__(self):
        try:
            logger.debug(f"🔧  Initialized LoggingSettings: log_dir={self.log_dir}, log_file={self.log_file}, "
                         f"backup_count={self.backup_count}, max_size_mb={self.max_size_mb}, "
                         f"debug_mode={self.debug_mode}, log_to_file={self.log_to_file}")

            if self.log_to_file:
                try:
                    if os.path.exists(self.log_dir) and not os.access(self.log_dir, os.W_OK):
                        logger.warning(f"Log directory is not writable: {self.log_dir}")
                except Exception as e:
                    logger.warning(f"Error checking log directory: {e}")

            if self.backup_count <= 0:
                logger.warning(f"Invalid backup_count: {self.backup_count}, should be positive")
            if self.max_size_mb <= 0:
                logger.warning(f"Invalid max_size_mb: {self.max_size_mb}, should be positive")

        except Exception as e:
            logger.error(f"Error in LoggingSettings.__post_init__: {e}")
            logger.debug(f"❌  Exception details: {traceback.format_exc()}")


@dataclass
class RunConfig:
    """Everything a computation needs besides its physical inputs"""

    units: str = DEFAULT_UNITS
    constants: Dict[str, float] = field(default_factory=dict)
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    regulators: RegulatorSettings = field(default_factory=RegulatorSettings)
    normalization: NormalizationSettings = field(default_factory=NormalizationSettings)
    monte_carlo: MonteCarloSettings = field(default_factory=MonteCarloSettings)
    seed: int = DEFAULT_SEED
    logging_settings: LoggingSettings = field(default_factory=LoggingSettings)

    def physical_constants(self):
        """
        Physical constants of the configured unit system with overrides applied

        Returns:
            PhysicalConstants instance
        """
        from models.kinematics import PhysicalConstants

        base = PhysicalConstants.si() if self.units == UNITS_SI else PhysicalConstants.natural()
        if not self.constants:
            return base
        logger.debug(f"🔄  Applying constant overrides: {self.constants}")
        return PhysicalConstants(
            hbar=self.constants.get("hbar", base.hbar),
            c=self.constants.get("c", base.c),
            k_B=self.constants.get("k_B", base.k_B),
            units=self.units,
        )

    def validate(self) -> List[str]:
        """
        Validate configuration

        Returns:
            List of error messages, empty if valid
        """
        logger.debug("🧪  Validating configuration")
        errors = []
        if self.units not in VALID_UNITS:
            errors.append(f"Invalid units: {self.units}, must be one of {VALID_UNITS}")
        for name, value in self.constants.items():
            if name not in ("hbar", "c", "k_B"):
                errors.append(f"Unknown constant override: {name}")
            elif not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                errors.append(f"Constant {name} must be a positive number, got {value}")
        errors.extend(self.quadrature.validate())
        errors.extend(self.regulators.validate())
        errors.extend(self.normalization.validate())
        errors.extend(self.monte_carlo.validate())
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            errors.append(f"Seed must be an integer in [0, 2^64), got {self.seed}")
        logger.debug(f"🏁  Validation complete. Found {len(errors)} errors")
        return errors

    def to_dict(self) -> Dict[str, Any]:
        def section(obj) -> Dict[str, Any]:
            result = {}
            for f in fields(obj):
                value = getattr(obj, f.name)
                result[f.name] = list(value) if isinstance(value, tuple) else value
            return result

        return {
            "units": self.units,
            "constants": dict(self.constants),
            "quadrature": section(self.quadrature),
            "regulators": section(self.regulators),
            "normalization": section(self.normalization),
            "monte_carlo": section(self.monte_carlo),
            "seed": self.seed,
        }


_SECTIONS = {
    "quadrature": QuadratureSettings,
    "regulators": RegulatorSettings,
    "normalization": NormalizationSettings,
    "monte_carlo": MonteCarloSettings,
}
_TOP_LEVEL_KEYS = {"units", "constants", "seed", *_SECTIONS}


def _build_section(name: str, cls, data: Any):
    if not isinstance(data, dict):
        raise ConfigError(f"Section {name} must be a JSON object, got {type(data).__name__}")
    allowed = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"Unknown keys in {name}: {unknown}", {"allowed": sorted(allowed)})
    try:
        return cls(**data)
    except TypeError as e:
        raise ConfigError(f"Invalid section {name}: {e}") from e


def load_config_from_dict(data: Dict[str, Any]) -> RunConfig:
    """
    Build a RunConfig from a parsed JSON document

    Args:
        data: Parsed RunConfig document

    Returns:
        Validated RunConfig
    """
    if not isinstance(data, dict):
        raise ConfigError("RunConfig document must be a JSON object")
    unknown = sorted(set(data) - _TOP_LEVEL_KEYS)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {unknown}", {"allowed": sorted(_TOP_LEVEL_KEYS)})

    kwargs: Dict[str, Any] = {}
    for name, cls in _SECTIONS.items():
        if name in data:
            kwargs[name] = _build_section(name, cls, data[name])
    if "constants" in data:
        if not isinstance(data["constants"], dict):
            raise ConfigError("Section constants must be a JSON object")
        kwargs["constants"] = dict(data["constants"])
    for name in ("units", "seed"):
        if name in data:
            kwargs[name] = data[name]

    config = RunConfig(logging_settings=load_logging_settings_from_env(), **kwargs)
    errors = config.validate()
    if errors:
        raise ConfigError("Invalid configuration: " + "; ".join(errors), {"errors": errors})
    return config


def load_config_from_file(path: str) -> RunConfig:
    """
    Load a RunConfig JSON file

    Args:
        path: Path to the JSON document

    Returns:
        Validated RunConfig
    """
    logger.debug(f"🔍  Loading configuration from {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise ConfigError(f"Cannot read configuration file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Configuration file {path} is not valid JSON: {e}") from e
    config = load_config_from_dict(data)
    logger.debug(f"✅  Loaded configuration from {path}")
    return config


def get_env_bool(name: str, default: bool = False) -> bool:
    """
    Get boolean value from environment variable

    Args:
        name: Environment variable name
        default: Default value if not found

    Returns:
        Boolean value
    """
    try:
        if name not in os.environ:
            logger.debug(f"📋  Environment variable {name} not found, using default: {default}")
            return default

        value = os.environ.get(name, str(default)).lower()
        result = value in ('true', 'yes', '1', 'y')
        logger.debug(f"🔄  Converted {name}='{value}' to boolean: {result}")
        return result
    except Exception as e:
        logger.error(f"Error getting boolean env var {name}: {e}")
        logger.debug(f"❌  Exception details: {traceback.format_exc()}")
        return default


def get_env_int(name: str, default: int) -> int:
    """
    Get integer value from environment variable

    Args:
        name: Environment variable name
        default: Default value if not found

    Returns:
        Integer value
    """
    try:
        if name not in os.environ:
            logger.debug(f"📋  Environment variable {name} not found, using default: {default}")
            return default

        value = os.environ.get(name, str(default))
        try:
            result = int(value)
            logger.debug(f"🔄  Successfully converted {name}='{value}' to int: {result}")

            if name in ["LOG_BACKUP_COUNT", "MAX_LOG_SIZE"] and result <= 0:
                logger.warning(f"Invalid {name} value: {result}, should be positive. Using default: {default}")
                return default

            return result
        except (ValueError, TypeError) as e:
            logger.warning(f"Cannot convert {name}='{value}' to int: {e}")
            return default
    except Exception as e:
        logger.error(f"Unexpected error getting int env var {name}: {e}")
        logger.debug(f"❌  Exception details: {traceback.format_exc()}")
        return default


def load_logging_settings_from_env(dotenv_path: Optional[str] = None) -> LoggingSettings:
    """
    Load logging settings from the environment and an optional .env file

    Computational inputs never come from the environment.

    Returns:
        LoggingSettings object
    """
    try:
        load_dotenv(dotenv_path)
        settings = LoggingSettings(
            log_dir=os.environ.get("LOG_DIR", DEFAULT_LOG_DIR),
            log_file=os.environ.get("LOG_FILE", DEFAULT_LOG_FILE),
            backup_count=get_env_int("LOG_BACKUP_COUNT", DEFAULT_LOG_BACKUP_COUNT),
            max_size_mb=get_env_int("MAX_LOG_SIZE", DEFAULT_LOG_MAX_SIZE_MB),
            debug_mode=get_env_bool("DEBUG", DEFAULT_DEBUG_MODE),
            log_to_file=get_env_bool("LOG_TO_FILE", DEFAULT_LOG_TO_FILE),
        )
        logger.debug(f"✅  Loaded logging settings: dir={settings.log_dir}, "
                     f"file={settings.log_file}, debug={settings.debug_mode}")
        return settings
    except Exception as e:
        logger.error(f"Error loading logging settings: {e}")
        logger.debug(f"❌  Exception details: {traceback.format_exc()}")
        return LoggingSettings()
