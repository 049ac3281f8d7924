#!/usr/bin/env python3
# src/services/verification.py
"""
Acceptance suite: every closed form against an independent oracle
"""

import logging
import math
import traceback
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.integrate import quad

from config.settings import QuadratureSettings, RunConfig
from constants import (
    MC_SIGMA_BOUND, PROFILE_DEFAULT, SAMPLE_SCALE, SUITE_ALL, TOLERANCE_SCALE,
    VALID_SUITES, VALID_TOLERANCE_PROFILES,
)
from errors import RotatingZpfError, UsageError
from models.bogolubov import ModeVector
from models.correlation import CFComponentSpec, MonomialCoefficients
from models.kinematics import FrameTag, PhysicalConstants, RotationKinematics, SpacetimeEvent
from models.oracles import CheckResult, DirectionGrid, McFieldSpec, VerificationReport
from services.angular_reduction import phi_moment, reduce_angular, theta_moment
from services.bogolubov import (
    bogolubov_support, i_operator_amplitude, particle_number,
)
from services.em_correlations import (
    cf_continuous, cf_discrete, cf_e11_coincident, e11_explicit_closed_form,
)
from services.kinematics import (
    detector_worldline_lab, hyperbolic_coords, interval_lambda, interval_mu, lorentz_lab_to_mu,
    mu_frame_coords, mu_frame_coords_stepwise,
)
from services.monte_carlo import MonteCarloSampler
from services.oracles import SCALAR, abel_summed_series, damped_mode_sum_cf, regulated_cf_quadrature
from services.scalar_correlations import scalar_cf_continuous, scalar_cf_discrete, wightman_denominator
from services.spectral_regularization import (
    abel_plana_check, energy_density_from_mode_sum, energy_density_spectral_route,
    reg_energy_density, regularized_sum, regularized_sum_pole_series, t_rot, thermal_part,
)

logger = logging.getLogger("verification")

# Tight tolerances for the reference integrals behind the angular identities
_REFERENCE_QUADRATURE = QuadratureSettings(epsabs=1e-15, epsrel=1e-13, limit=500)


class _Suite:
    """Collects the checks of one suite run"""

    def __init__(self, name: str, report: VerificationReport, tolerance_scale: float):
        self.name = name
        self.report = report
        self.tolerance_scale = tolerance_scale

    def compare(self, name: str, value: float, reference: float, rel_tol: float = 0.0,
                abs_tol: float = 0.0, detail: str = "") -> CheckResult:
        tolerance = self.tolerance_scale * max(rel_tol * abs(reference), abs_tol)
        passed = math.isfinite(value) and abs(value - reference) <= tolerance
        return self._add(CheckResult(self.name, name, passed, float(value), float(reference), tolerance, detail))

    def flag(self, name: str, passed: bool, detail: str = "") -> CheckResult:
        return self._add(CheckResult(self.name, name, bool(passed), detail=detail))

    def guarded(self, name: str, check: Callable[[], None]) -> None:
        """Run one check, turning package errors into a failed entry"""
        try:
            check()
        except RotatingZpfError as e:
            logger.error(f"Check {self.name}/{name} raised {type(e).__name__}: {e}")
            logger.debug(f"❌  Exception details: {traceback.format_exc()}")
            self.flag(name, False, f"{type(e).__name__}: {e}")

    def _add(self, check: CheckResult) -> CheckResult:
        self.report.checks.append(check)
        marker = "✅" if check.passed else "❌"
        logger.debug(f"{marker}  {self.name}/{check.name}: value={check.value} reference={check.reference}")
        return check


def _count(base: int, profile: str) -> int:
    return max(1, int(round(base * SAMPLE_SCALE[profile])))


def _random_kin(rng: np.random.Generator, beta_max: float,
                constants: PhysicalConstants) -> RotationKinematics:
    omega = float(rng.uniform(0.5, 2.0))
    beta = float(rng.uniform(0.05, beta_max))
    return RotationKinematics(omega=omega, r=beta * constants.c / omega, constants=constants)


def _kinematics_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    n_cases = _count(1000, profile)
    constants = PhysicalConstants.natural()
    worst_fixpoint = worst_chain = worst_interval = 0.0
    for _ in range(n_cases):
        kin = _random_kin(rng, 0.95, constants)
        t = float(rng.uniform(-10.0, 10.0))
        coords = mu_frame_coords(detector_worldline_lab(t, kin), t, kin)
        residual = np.array(coords.as_tuple()) - np.array((0.0, 0.0, 0.0, t / kin.gamma))
        worst_fixpoint = max(worst_fixpoint, float(np.max(np.abs(residual))) / max(1.0, abs(t)))

        event = SpacetimeEvent(*rng.uniform(-5.0, 5.0, size=4))
        closed = np.array(mu_frame_coords(event, t, kin).as_tuple())
        chained = np.array(mu_frame_coords_stepwise(event, t, kin).as_tuple())
        worst_chain = max(worst_chain, float(np.max(np.abs(closed - chained))) / max(1.0, float(np.max(np.abs(closed)))))

        tau = t / kin.gamma
        in_lambda = SpacetimeEvent(*rng.uniform(-5.0, 5.0, size=4), frame_tag=FrameTag.lam(tau))
        in_mu = lorentz_lab_to_mu(in_lambda, kin.v, -kin.v * kin.gamma * tau, constants)
        lam = interval_lambda(in_lambda, tau, kin.gamma, constants)
        mu = interval_mu(in_mu, tau, constants)
        worst_interval = max(worst_interval, abs(lam - mu) / max(1.0, abs(lam)))

    suite.compare("worldline_fixpoint", worst_fixpoint, 0.0, abs_tol=1e-9, detail=f"{n_cases} cases")
    suite.compare("stepwise_composition", worst_chain, 0.0, abs_tol=1e-9, detail=f"{n_cases} cases")
    suite.compare("interval_invariance", worst_interval, 0.0, abs_tol=1e-9, detail=f"{n_cases} cases")

    shifted = [hyperbolic_coords(tau, 1.0) for tau in (0.5, 1.0, 2.0)]
    suite.flag("hyperbolic_shift_differs", all(h.x_star != h.x_star_tau for h in shifted),
               "X* differs from x* tau for tau != 0")


def _angular_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    n_cases = _count(50, profile)
    settings = _REFERENCE_QUADRATURE
    worst_phi = worst_theta = 0.0
    for _ in range(n_cases):
        b = float(rng.uniform(-0.95, 0.95))
        for p in (0, 1, 2):
            reference = quad(lambda x: math.sin(x) ** p / (1.0 + b * math.sin(x)) ** 4, 0.0, 2.0 * math.pi,
                             epsabs=settings.epsabs, epsrel=settings.epsrel, limit=settings.limit)[0]
            worst_phi = max(worst_phi, abs(phi_moment(p, b) - reference) / abs(reference))
        k = float(rng.uniform(-0.95, 0.95))
        for m in (1, 3, 5, 7):
            reference = quad(lambda x: math.sin(x) ** m / (1.0 - k * k * math.sin(x) ** 2) ** 3.5, 0.0, math.pi,
                             epsabs=settings.epsabs, epsrel=settings.epsrel, limit=settings.limit)[0]
            worst_theta = max(worst_theta, abs(theta_moment(m, k) - reference) / abs(reference))
    suite.compare("phi_moments", worst_phi, 0.0, abs_tol=1e-10, detail=f"{n_cases} random b")
    suite.compare("theta_moments", worst_theta, 0.0, abs_tol=1e-10, detail=f"{n_cases} random k")

    # isotropic brace: int do (1 + k sin theta sin phi)^-4 against direct 2-D quadrature
    k = 0.6
    closed = reduce_angular(MonomialCoefficients({"1": 1.0}), k)

    def ring(theta: float) -> float:
        return math.sin(theta) * quad(lambda phi: (1.0 + k * math.sin(theta) * math.sin(phi)) ** -4,
                                      0.0, 2.0 * math.pi, epsabs=1e-14, epsrel=1e-12)[0]

    direct = quad(ring, 0.0, math.pi, epsabs=1e-14, epsrel=1e-12)[0]
    suite.compare("reduce_angular_isotropic", closed, direct, rel_tol=1e-10)


def _em_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    constants = PhysicalConstants.natural()
    e11 = CFComponentSpec.parse("E1E1")

    inertial = RotationKinematics(omega=1.0, r=0.0)
    suite.compare("coincident_beta_zero", cf_e11_coincident(inertial, 1.0).value, 4.0 / math.pi, rel_tol=1e-6)

    for _ in range(_count(20, profile)):
        kin = _random_kin(rng, 0.9, constants)
        tau2 = float(rng.uniform(0.2, 2.0))
        label = f"continuous_vs_regulated(omega={kin.omega:.3f}, beta={kin.beta:.3f}, tau2={tau2:.3f})"

        def continuous_check(kin=kin, tau2=tau2, label=label):
            closed = cf_continuous(e11, 0.0, tau2, kin).value
            suite.compare(label.replace("continuous_vs_regulated", "explicit_vs_pipeline"),
                          e11_explicit_closed_form(0.0, tau2, kin), closed, rel_tol=1e-12)
            oracle = regulated_cf_quadrature(e11, 0.0, tau2, kin, config=config)
            suite.compare(label, oracle.value, closed, rel_tol=5e-3)

        suite.guarded(label, continuous_check)

    reference_kin = RotationKinematics(omega=1.0, r=0.5)

    def unrotated_check():
        closed = cf_continuous(e11, 0.0, 1.0, reference_kin).value
        oracle = regulated_cf_quadrature(e11, 0.0, 1.0, reference_kin, config=config, rotated=False)
        suite.compare("unrotated_brace_vs_closed_form", oracle.value, closed, rel_tol=5e-3)

    suite.guarded("unrotated_brace_vs_closed_form", unrotated_check)

    floor = 1e-3 * abs(cf_continuous(e11, 0.0, 0.8, reference_kin).value)
    for name in ("E2E2", "E3E3", "E1E2", "H1H1"):
        label = f"{name}_continuous_vs_regulated"

        def component_check(spec=CFComponentSpec.parse(name), label=label):
            closed = cf_continuous(spec, 0.0, 0.8, reference_kin).value
            oracle = regulated_cf_quadrature(spec, 0.0, 0.8, reference_kin, config=config)
            suite.compare(label, oracle.value, closed, rel_tol=5e-3, abs_tol=floor)

        suite.guarded(label, component_check)

    def discrete_check():
        _, finite = cf_discrete(e11, 0.0, 0.25, reference_kin, config)
        oracle = damped_mode_sum_cf(e11, 0.0, 0.25, reference_kin, config)
        suite.compare("discrete_vs_damped_mode_sum", finite.value, oracle.value, rel_tol=1e-4)

        period = 2.0 * math.pi / (reference_kin.omega * reference_kin.gamma)
        _, shifted = cf_discrete(e11, 0.0, 0.25 + period, reference_kin, config)
        suite.compare("discrete_periodicity", shifted.value, finite.value, rel_tol=1e-6, abs_tol=1e-9)

    suite.guarded("discrete_vs_damped_mode_sum", discrete_check)


def _scalar_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    constants = PhysicalConstants.natural()
    inertial = RotationKinematics(omega=1.0, r=0.0)
    suite.compare("inertial_limit", scalar_cf_continuous(0.0, 1.0, inertial).value, -1.0 / math.pi, rel_tol=1e-12)

    kin = RotationKinematics(omega=1.0, r=0.5)
    value = scalar_cf_continuous(0.0, 1.0, kin).value
    suite.compare("worked_value", value, -0.3074, rel_tol=2e-4)
    identity = value * (-math.pi / (constants.hbar * constants.c)) * wightman_denominator(0.0, 1.0, kin)
    suite.compare("wightman_identity", identity, 1.0, rel_tol=1e-12)

    for _ in range(_count(5, profile)):
        case = _random_kin(rng, 0.9, constants)
        tau2 = float(rng.uniform(0.2, 2.0))
        label = f"continuous_vs_regulated(omega={case.omega:.3f}, beta={case.beta:.3f}, tau2={tau2:.3f})"

        def regulated_check(case=case, tau2=tau2, label=label):
            closed = scalar_cf_continuous(0.0, tau2, case).value
            oracle = regulated_cf_quadrature(SCALAR, 0.0, tau2, case, config=config)
            suite.compare(label, oracle.value, closed, rel_tol=5e-3)

        suite.guarded(label, regulated_check)

    tau2 = math.pi / (2.0 * kin.omega * kin.gamma)

    def discrete_check():
        _, finite = scalar_cf_discrete(0.0, tau2, kin, config)
        oracle = damped_mode_sum_cf(SCALAR, 0.0, tau2, kin, config)
        suite.compare("discrete_vs_damped_mode_sum", finite.value, oracle.value, rel_tol=1e-4)
        period = 2.0 * math.pi / (kin.omega * kin.gamma)
        _, shifted = scalar_cf_discrete(0.0, tau2 + period, kin, config)
        suite.compare("discrete_periodicity", shifted.value, finite.value, rel_tol=1e-6, abs_tol=1e-9)

    suite.guarded("discrete_vs_damped_mode_sum", discrete_check)


def _spectral_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    phases = np.linspace(0.3, 2.0 * math.pi - 0.3, _count(20, profile))
    worst_abel = worst_poles = 0.0
    for F in phases:
        for p in (1, 3):
            closed = regularized_sum(p, float(F)).total_closed_form
            scale = max(1.0, abs(closed))
            worst_abel = max(worst_abel, abs(abel_summed_series(p, float(F), config=config) - closed) / scale)
            worst_poles = max(worst_poles, abs(regularized_sum_pole_series(p, float(F)) - closed) / scale)
    suite.compare("abel_summation", worst_abel, 0.0, abs_tol=1e-6, detail=f"{len(phases)} phases")
    suite.compare("pole_series", worst_poles, 0.0, abs_tol=1e-10, detail=f"{len(phases)} phases")

    suite.compare("thermal_limit_p3", thermal_part(3, 0.0), 1.0 / 120.0, abs_tol=1e-8)
    suite.compare("thermal_limit_p1", thermal_part(1, 0.0), -1.0 / 12.0, abs_tol=1e-8)

    direct, identity = abel_plana_check(0.5, 3, config.quadrature)
    suite.compare("abel_plana_identity", identity, direct, rel_tol=1e-8)

    si = PhysicalConstants.si()
    temperature = t_rot(1e11, si).t_rot
    suite.compare("t_rot_exact", temperature, si.hbar * 1e11 / (2.0 * math.pi * si.k_B), rel_tol=1e-15)

    kin = RotationKinematics(omega=1.0, r=0.5)
    density = reg_energy_density(kin)
    suite.compare("energy_density_closed_form", density.value,
                  density.anisotropy_factor * 4.0 * kin.constants.sigma / kin.constants.c * density.t_rot ** 4,
                  rel_tol=1e-12)
    suite.guarded("energy_density_spectral_route", lambda: suite.compare(
        "energy_density_spectral_route", energy_density_spectral_route(kin, settings=config.quadrature),
        density.value, rel_tol=1e-8))
    suite.compare("energy_density_mode_sum", energy_density_from_mode_sum(kin), density.value, rel_tol=1e-8)


def _bogolubov_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    kprime = ModeVector(1.0, 0.0, 0.0)
    moving = RotationKinematics(omega=1.0, r=0.5)
    suite.compare("worked_particle_number", particle_number(kprime, math.pi / 2.0, moving),
                  moving.gamma / 32.0, rel_tol=1e-9)
    suite.compare("zero_at_rest", particle_number(kprime, math.pi / 2.0, RotationKinematics(omega=1.0, r=0.0)),
                  0.0, abs_tol=0.0)
    suite.compare("zero_at_zero_angle", particle_number(kprime, 0.0, moving), 0.0, abs_tol=0.0)

    worst_residual = worst_modulus = 0.0
    for _ in range(_count(100, profile)):
        kin = _random_kin(rng, 0.9, PhysicalConstants.natural())
        mode = ModeVector(*rng.uniform(-2.0, 2.0, size=3))
        delta_t = float(rng.uniform(-math.pi, math.pi))
        worst_residual = max(worst_residual, bogolubov_support(mode, delta_t, kin).max_residual)
        number = particle_number(mode, delta_t, kin)
        amplitude = abs(i_operator_amplitude(mode, delta_t, kin)) ** 2
        worst_modulus = max(worst_modulus, abs(amplitude - number) / max(abs(number), 1e-12))
    suite.compare("support_residuals", worst_residual, 0.0, abs_tol=1e-10)
    suite.compare("amplitude_modulus", worst_modulus, 0.0, abs_tol=1e-10)


def _monte_carlo_suite(suite: _Suite, config: RunConfig, profile: str, rng: np.random.Generator) -> None:
    settings = config.monte_carlo
    grid = DirectionGrid.gauss_product(settings.n_theta, settings.n_phi)
    ensembles = max(200, int(round(settings.ensembles * SAMPLE_SCALE[profile])))
    mc = McFieldSpec(n_max=settings.n_max, direction_grid=grid, ensembles=ensembles,
                     seed=config.seed, chunk_size=settings.chunk_size)
    convention = config.normalization.discrete_em_convention
    sampler = MonteCarloSampler(mc, convention=convention)
    kin = RotationKinematics(omega=1.0, r=0.5)
    tau1, tau2 = -0.125, 0.125
    bound = MC_SIGMA_BOUND

    check = sampler.phase_correlator_check()
    suite.flag("phase_correlator", check["passed"], f"{check['ensembles']} ensembles")

    e11 = CFComponentSpec.parse("E1E1")
    estimate = sampler.estimate(e11, tau1, tau2, kin)
    _, matched = cf_discrete(e11, tau1, tau2, kin, config, n_max=settings.n_max, grid=grid)
    suite.compare("expected_matches_truncated_discrete", estimate.metadata["expected_value"], matched.value,
                  rel_tol=1e-9, abs_tol=1e-12)
    suite.compare("e11_truncation_matched", estimate.value, matched.value,
                  abs_tol=bound * estimate.error_estimate / suite.tolerance_scale)

    zero = sampler.estimate(CFComponentSpec.parse("E1E3"), tau1, tau2, kin)
    suite.compare("e13_zero", zero.value, 0.0, abs_tol=bound * zero.error_estimate / suite.tolerance_scale)

    forward = sampler.sample_products(CFComponentSpec.parse("E1E2"), tau1, tau2, kin)
    backward = sampler.sample_products(CFComponentSpec.parse("E2E1"), tau1, tau2, kin)
    total = forward + backward
    error = float(np.std(total, ddof=1) / math.sqrt(total.size))
    suite.compare("e12_antisymmetry", float(np.mean(total)), 0.0, abs_tol=bound * error / suite.tolerance_scale)

    repeat = MonteCarloSampler(mc, convention=convention).estimate(e11, tau1, tau2, kin)
    suite.flag("deterministic_seed", repeat.value == estimate.value, f"seed {config.seed}")


_SUITES: Dict[str, Callable[[_Suite, RunConfig, str, np.random.Generator], None]] = {
    "kinematics": _kinematics_suite,
    "angular": _angular_suite,
    "em": _em_suite,
    "scalar": _scalar_suite,
    "spectral": _spectral_suite,
    "bogolubov": _bogolubov_suite,
    "monte_carlo": _monte_carlo_suite,
}


def run_verification(suite: str = SUITE_ALL, profile: str = PROFILE_DEFAULT,
                     config: Optional[RunConfig] = None) -> VerificationReport:
    """
    Run the acceptance suite

    Args:
        suite: One suite name or "all"
        profile: Tolerance profile; scales every tolerance and the random-case counts
        config: Run configuration (seed, tolerances, Monte-Carlo settings)

    Returns:
        VerificationReport with one CheckResult per comparison
    """
    if suite not in VALID_SUITES:
        raise UsageError(f"Unknown suite: {suite}, must be one of {VALID_SUITES}")
    if profile not in VALID_TOLERANCE_PROFILES:
        raise UsageError(f"Unknown tolerance profile: {profile}, must be one of {VALID_TOLERANCE_PROFILES}")
    config = config or RunConfig()
    report = VerificationReport(suite=suite, profile=profile)
    names: List[str] = list(_SUITES) if suite == SUITE_ALL else [suite]

    for name in names:
        logger.info(f"🧪  Running {name} checks ({profile} profile)")
        rng = np.random.default_rng(config.seed)
        runner = _Suite(name, report, TOLERANCE_SCALE[profile])
        runner.guarded("suite", lambda: _SUITES[name](runner, config, profile, rng))

    logger.info(f"🏁  Verification finished: {len(report.checks)} checks, {len(report.failures)} failures")
    return report
