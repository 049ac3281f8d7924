#!/usr/bin/env python3
# src/main.py
"""
Command-line entry point: one subcommand per computation, JSON or CSV on stdout
"""

import argparse
import logging
import sys
import traceback
from typing import Any, Callable, Dict, List, Optional, TextIO

from config.settings import RunConfig, load_config_from_file, load_logging_settings_from_env
from constants import (
    CMD_BOGOLUBOV, CMD_CF_EM, CMD_CF_SCALAR, CMD_ENERGY_DENSITY, CMD_FRAMES, CMD_MC,
    CMD_SPECTRUM, CMD_VERIFY, DEFAULT_OUTPUT_FORMAT, DEFAULT_SPECTRUM_N_MAX,
    DIMENSION_DIMENSIONLESS, DIMENSION_EM_CORRELATION, DIMENSION_ENERGY_DENSITY,
    DIMENSION_SCALAR_CORRELATION, DIMENSION_TEMPERATURE, EXIT_DOMAIN_ERROR, EXIT_FAILURE,
    EXIT_NUMERIC_ERROR, EXIT_OK, EXIT_USAGE_ERROR, METHOD_CLOSED_FORM, PROFILE_DEFAULT, SUITE_ALL, UNITS_SI,
    VALID_OUTPUT_FORMATS, VALID_SUITES, VALID_TOLERANCE_PROFILES, VALID_UNITS,
)
from errors import (
    ConfigError, DomainError, NumericConvergenceError, RotatingZpfError, UsageError,
)
from models.bogolubov import ModeVector
from models.correlation import CFComponentSpec, CorrelationResult
from models.kinematics import RotationKinematics, SpacetimeEvent
from models.oracles import DirectionGrid, McFieldSpec
from services.bogolubov import (
    beta_prefactor, bogolubov_support, i_operator_amplitude, particle_number,
)
from services.em_correlations import cf_continuous, cf_discrete
from services.kinematics import (
    detector_worldline_lab, hyperbolic_coords, hyperbolic_shift_distance, mu_frame_coords,
    mu_frame_coords_stepwise,
)
from services.monte_carlo import mc_zero_point_cf
from services.scalar_correlations import scalar_cf_continuous, scalar_cf_discrete
from services.spectral_regularization import (
    energy_density_from_mode_sum, energy_density_spectral_route, reg_energy_density,
    thermal_weight_spectrum,
)
from services.verification import run_verification
from utils.format_utils import UnitSystem, format_payload
from utils.logging_utils import setup_logging

logger = logging.getLogger("main")


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message, {"usage": self.format_usage().strip()})


def _add_common(parser: argparse.ArgumentParser, kinematics: bool = True) -> None:
    parser.add_argument("--format", choices=VALID_OUTPUT_FORMATS, default=DEFAULT_OUTPUT_FORMAT)
    parser.add_argument("--config", metavar="PATH", help="RunConfig JSON file")
    parser.add_argument("--units", choices=VALID_UNITS, help="Unit system of inputs and outputs")
    parser.add_argument("--seed", type=int, help="Seed for every random draw")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging on stderr")
    if kinematics:
        parser.add_argument("--omega", type=float, required=True, help="Angular velocity")
        parser.add_argument("--radius", type=float, required=True, help="Orbit radius")


def _add_times(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tau1", type=float, required=True)
    parser.add_argument("--tau2", type=float, required=True)


def build_parser() -> CommandParser:
    parser = CommandParser(prog="rotating-zpf", description="Zero-point field correlations at a rotating detector")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)

    cf_em = sub.add_parser(CMD_CF_EM, help="Electromagnetic correlation component")
    _add_common(cf_em)
    _add_times(cf_em)
    cf_em.add_argument("--component", default="E1E1")
    cf_em.add_argument("--discrete", action="store_true", help="Discrete spectrum omega_n = n Omega")
    cf_em.add_argument("--n-max", type=int, help="Truncate the discrete mode sum")

    cf_scalar = sub.add_parser(CMD_CF_SCALAR, help="Massless scalar correlation")
    _add_common(cf_scalar)
    _add_times(cf_scalar)
    cf_scalar.add_argument("--discrete", action="store_true")

    spectrum = sub.add_parser(CMD_SPECTRUM, help="Discrete spectrum with Planck weights at T_rot")
    _add_common(spectrum)
    spectrum.add_argument("--n-max", type=int, default=DEFAULT_SPECTRUM_N_MAX)

    energy = sub.add_parser(CMD_ENERGY_DENSITY, help="Regularized energy density")
    _add_common(energy)

    bogolubov = sub.add_parser(CMD_BOGOLUBOV, help="Bogolubov support and particle number")
    _add_common(bogolubov)
    for name in ("--k1", "--k2", "--k3"):
        bogolubov.add_argument(name, type=float, required=True)
    bogolubov.add_argument("--delta-t", type=float, required=True, help="Frame angle Omega t")
    bogolubov.add_argument("--t", type=float, default=0.0, help="Lab time")

    frames = sub.add_parser(CMD_FRAMES, help="Coordinates in the comoving frames")
    _add_common(frames)
    frames.add_argument("--t", type=float, default=0.0, help="Lab time of the detector event")
    frames.add_argument("--t-frame", type=float, help="Lab time labelling the frame, defaults to --t")
    frames.add_argument("--event", type=float, nargs=4, metavar=("X1", "X2", "X3", "T"),
                        help="Lab event to map into the frame")
    frames.add_argument("--accel", type=float, help="Proper acceleration for the hyperbolic check")
    frames.add_argument("--tau", type=float, default=1.0, help="Proper time for the hyperbolic check")

    verify = sub.add_parser(CMD_VERIFY, help="Run the oracle-versus-closed-form suite")
    _add_common(verify, kinematics=False)
    verify.add_argument("--suite", choices=VALID_SUITES, default=SUITE_ALL)
    verify.add_argument("--tolerance-profile", choices=VALID_TOLERANCE_PROFILES, default=PROFILE_DEFAULT)

    mc = sub.add_parser(CMD_MC, help="Monte-Carlo estimate of a correlation component")
    _add_common(mc)
    _add_times(mc)
    mc.add_argument("--component", default="E1E1")
    mc.add_argument("--n-max", type=int)
    mc.add_argument("--ensembles", type=int)
    mc.add_argument("--n-theta", type=int)
    mc.add_argument("--n-phi", type=int)

    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    config = load_config_from_file(args.config) if args.config else RunConfig(
        logging_settings=load_logging_settings_from_env())
    if args.units:
        config.units = args.units
    if args.seed is not None:
        config.seed = args.seed
    errors = config.validate()
    if errors:
        raise ConfigError("Invalid configuration: " + "; ".join(errors), {"errors": errors})
    return config


def _kinematics(args: argparse.Namespace, config: RunConfig) -> RotationKinematics:
    return RotationKinematics(omega=args.omega, r=args.radius, constants=config.physical_constants())


def _correlation_payload(result: CorrelationResult, config: RunConfig, dimension) -> Dict[str, Any]:
    payload = {
        "value": result.value,
        "method": result.method,
        "error_estimate": result.error_estimate,
        "warnings": list(result.warnings),
        "metadata": {k: v for k, v in result.metadata.items() if k != "warnings"},
    }
    if config.units == UNITS_SI:
        units = UnitSystem()
        payload["value_natural"] = units.to_natural(result.value, dimension)
        payload["error_estimate_natural"] = units.to_natural(result.error_estimate, dimension)
    return payload


def cmd_cf_em(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    spec = CFComponentSpec.parse(args.component)
    if args.discrete:
        vacuum, result = cf_discrete(spec, args.tau1, args.tau2, kin, config, n_max=args.n_max)
        payload = _correlation_payload(result, config, DIMENSION_EM_CORRELATION)
        payload["vacuum_part"] = vacuum.to_dict() if vacuum else None
        return payload
    return _correlation_payload(cf_continuous(spec, args.tau1, args.tau2, kin), config, DIMENSION_EM_CORRELATION)


def cmd_cf_scalar(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    if args.discrete:
        vacuum, result = scalar_cf_discrete(args.tau1, args.tau2, kin, config)
        payload = _correlation_payload(result, config, DIMENSION_SCALAR_CORRELATION)
        payload["vacuum_part"] = vacuum.to_dict() if vacuum else None
        return payload
    return _correlation_payload(scalar_cf_continuous(args.tau1, args.tau2, kin), config,
                                DIMENSION_SCALAR_CORRELATION)


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    rows = thermal_weight_spectrum(kin, args.n_max, kin.constants)
    return {"rows": [row.to_dict() for row in rows], "warnings": []}


def cmd_energy_density(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    density = reg_energy_density(kin)
    payload = {
        "value": density.value,
        "method": METHOD_CLOSED_FORM,
        "error_estimate": 0.0,
        "w_rad": density.w_rad,
        "anisotropy_factor": density.anisotropy_factor,
        "t_rot": density.t_rot,
        "spectral_route": energy_density_spectral_route(kin, settings=config.quadrature),
        "mode_sum_route": energy_density_from_mode_sum(kin),
        "warnings": [],
    }
    if config.units == UNITS_SI:
        units = UnitSystem()
        payload["value_natural"] = units.to_natural(density.value, DIMENSION_ENERGY_DENSITY)
        payload["t_rot_natural"] = units.to_natural(density.t_rot, DIMENSION_TEMPERATURE)
    return payload


def cmd_bogolubov(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    kprime = ModeVector(args.k1, args.k2, args.k3, kin.constants.c)
    support = bogolubov_support(kprime, args.delta_t, kin)
    warnings = []
    if config.units == UNITS_SI:
        warnings.append("particle number is dimensionless in natural units only")
    return {
        "support": support.to_dict(),
        "beta_prefactor": beta_prefactor(kprime, args.delta_t, args.t, kin),
        "particle_number": particle_number(kprime, args.delta_t, kin),
        "i_operator_amplitude": i_operator_amplitude(kprime, args.delta_t, kin, args.t),
        "dimension": list(DIMENSION_DIMENSIONLESS),
        "warnings": warnings,
    }


def cmd_frames(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    t_frame = args.t if args.t_frame is None else args.t_frame
    detector = detector_worldline_lab(args.t, kin)
    payload: Dict[str, Any] = {
        "detector_lab": detector.to_dict(),
        "detector_mu": mu_frame_coords(detector, t_frame, kin).to_dict(),
        "warnings": [],
    }
    if args.event:
        event = SpacetimeEvent(*args.event)
        payload["event_mu"] = mu_frame_coords(event, t_frame, kin).to_dict()
        payload["event_mu_stepwise"] = mu_frame_coords_stepwise(event, t_frame, kin).to_dict()
    if args.accel is not None:
        payload["hyperbolic"] = hyperbolic_coords(args.tau, args.accel, kin.constants).to_dict()
        payload["hyperbolic_shift"] = hyperbolic_shift_distance(0.0, args.tau, args.accel, kin.constants)
    return payload


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    report = run_verification(args.suite, args.tolerance_profile, config)
    payload = report.to_dict()
    payload["warnings"] = [f"{c.suite}/{c.name} failed" for c in report.failures]
    return payload


def cmd_mc(args: argparse.Namespace, config: RunConfig) -> Dict[str, Any]:
    kin = _kinematics(args, config)
    settings = config.monte_carlo
    mc = McFieldSpec(
        n_max=args.n_max or settings.n_max,
        direction_grid=DirectionGrid.gauss_product(args.n_theta or settings.n_theta,
                                                   args.n_phi or settings.n_phi),
        ensembles=args.ensembles or settings.ensembles,
        seed=config.seed,
        chunk_size=settings.chunk_size,
    )
    result = mc_zero_point_cf(args.component, args.tau1, args.tau2, kin, mc, config)
    return _correlation_payload(result, config, DIMENSION_EM_CORRELATION)


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], Dict[str, Any]]] = {
    CMD_CF_EM: cmd_cf_em,
    CMD_CF_SCALAR: cmd_cf_scalar,
    CMD_SPECTRUM: cmd_spectrum,
    CMD_ENERGY_DENSITY: cmd_energy_density,
    CMD_BOGOLUBOV: cmd_bogolubov,
    CMD_FRAMES: cmd_frames,
    CMD_VERIFY: cmd_verify,
    CMD_MC: cmd_mc,
}


def _exit_code(error: RotatingZpfError) -> int:
    if isinstance(error, (UsageError, ConfigError)):
        return EXIT_USAGE_ERROR
    if isinstance(error, DomainError):
        return EXIT_DOMAIN_ERROR
    if isinstance(error, NumericConvergenceError):
        return EXIT_NUMERIC_ERROR
    return EXIT_FAILURE


def run_command(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Parse argv, run one subcommand and print its payload

    Args:
        argv: Arguments without the program name
        stdout: Stream for the payload, defaults to sys.stdout

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    output_format = DEFAULT_OUTPUT_FORMAT
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as e:
            # --help
            return EXIT_OK if not e.code else EXIT_USAGE_ERROR
        output_format = args.format
        config = _load_config(args)
        log_settings = config.logging_settings
        setup_logging(
            log_dir=log_settings.log_dir,
            log_file=log_settings.log_file,
            debug_mode=args.debug or log_settings.debug_mode,
            max_size_mb=log_settings.max_size_mb,
            backup_count=log_settings.backup_count,
            log_to_file=log_settings.log_to_file,
        )
        logger.debug(f"🔍  Running {args.command} in {config.units} units")

        payload = {"command": args.command, "units": config.units, "inputs": _inputs(args)}
        payload.update(COMMANDS[args.command](args, config))
        stdout.write(format_payload(payload, output_format))
        stdout.write("\n")

        if args.command == CMD_VERIFY and not payload["passed"]:
            logger.error(f"Verification failed: {payload['n_failures']} of {payload['n_checks']} checks")
            return EXIT_FAILURE
        logger.debug(f"✅  {args.command} finished")
        return EXIT_OK

    except RotatingZpfError as e:
        logger.error(f"{type(e).__name__}: {e}")
        logger.debug(f"❌  Exception details: {traceback.format_exc()}")
        error_payload = {"error": type(e).__name__, "message": str(e), "diagnostics": e.diagnostics}
        stdout.write(format_payload(error_payload, output_format))
        stdout.write("\n")
        return _exit_code(e)


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"command", "format", "config", "debug"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def main() -> int:
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
