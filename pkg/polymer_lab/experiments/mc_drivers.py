"""Drivers of the experiments that sample disorder fields, walks or renewals."""
import logging
import math
from typing import (
    List,
    Optional,
    Tuple,
)

import numpy as np
import pandas as pd
from polymer_lab.disorder import solve_beta
from polymer_lab.engine import (
    collision_moment,
    collision_moment_renewal,
)
from polymer_lab.estimators import (
    bookkeeping_sum,
    bound_check,
    change_of_measure_audit,
    change_of_scale_audit,
    displacements,
    exact_check,
    finite_volume_criterion,
    free_energy,
    gradient_norm,
    log_gap_to_critical_scale,
    mean_log_partition,
    paley_zygmund_check,
    partition_samples,
    sizebias_tv,
    skeleton_estimates,
    summarize,
    summary_fields,
    truncated_mean,
)
from polymer_lab.estimators.audits import SCALE_RATIO
from polymer_lab.estimators.fractional import sandwich_checks
from polymer_lab.estimators.skeleton import TAIL_RADII
from polymer_lab.lattice import overlap_sum
from polymer_lab.moments import (
    paley_zygmund_floor,
    second_moment_field,
    stretch_decay_slope,
    stretch_prob_mc,
    uniform_ball,
)
from polymer_lab.proxy import (
    eta_rule,
    event_bound_sum,
    event_report,
    make_strips,
    tilted_mean_grid,
)
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    Check,
    DomainException,
    McSummary,
)

from .config import ExperimentConfig
from .exact_drivers import calibrated_theta
from .plot import (
    PlotSpec,
    Series,
)
from .result import (
    ExperimentResult,
    blocks_frame,
)

logger = logging.getLogger("experiments")

#: Relative tolerance of ``E[L_N] = R_N`` at vanishing collision reward.
COLLISION_MEAN_TOLERANCE = 1e-12
#: Relative tolerance between the walk and renewal routes to ``log E[exp(lambda L_N)]``.
COLLISION_ROUTE_TOLERANCE = 1e-9
#: Largest relative spread of the collision ratio across horizons.
COLLISION_RATIO_SPREAD = 0.5
#: Largest distance between ``log|F|`` and ``-pi / sigma²``.
FREE_ENERGY_LOG_BAND = 3.0
#: Largest fitted slope of ``log J_l`` against ``l`` over ``l = 2..6``.
STRETCH_DECAY_SLOPE = math.log(0.5)
STRETCH_DECAY_CHECK = "stretch decay slope <= log(1/2)"


def _uniform_start(horizon: int) -> Tuple[str, float]:
    radius = math.sqrt(horizon)
    return f"uniform({radius:.6g})", radius


def _decay_checks(thetas: List[float], estimates: List[McSummary]) -> List[Check]:
    checks = []
    for (a, first), (b, second) in zip(zip(thetas, estimates), zip(thetas[1:], estimates[1:])):
        margin = first.estimate - second.estimate
        checks.append(Check(f"truncated mean decreases from theta={a:g} to theta={b:g}", margin > 0, margin))

    if len(estimates) >= 2:
        first, last = estimates[0], estimates[-1]
        margin = first.estimate - last.estimate - 2 * math.hypot(first.stderr, last.stderr)
        name = f"two-sigma separation between theta={thetas[0]:g} and theta={thetas[-1]:g}"
        checks.append(Check(name, margin > 0, margin))

    for i in range(1, len(estimates) - 1):
        triple = estimates[i - 1 : i + 2]
        if any(summary.estimate <= 0 for summary in triple):
            checks.append(Check(f"-log truncated mean convex at theta={thetas[i]:g}", False, math.nan))
            continue
        logs = [-math.log(summary.estimate) for summary in triple]
        errors = [summary.stderr / summary.estimate for summary in triple]
        difference = logs[2] - 2 * logs[1] + logs[0]
        spread = math.sqrt(errors[0] ** 2 + 4 * errors[1] ** 2 + errors[2] ** 2)
        margin = difference - spread
        checks.append(Check(f"-log truncated mean convex at theta={thetas[i]:g}", margin > 0, margin))
    return checks


def decay_vs_theta(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Estimate ``E[Z_N(U) ∧ 1]`` along ``sweep.thetas`` for the uniform law on the disc of radius ``sqrt(N)``."""
    model, n = config.model, config.horizon
    label, radius = _uniform_start(n)
    f = uniform_ball(radius)
    thetas = list(config["sweep.thetas"])

    rows, estimates, checks = [], [], []
    for theta in thetas:
        point = solve_beta(model, n, theta)
        summary = truncated_mean(
            model, n, point.beta, f, config.reps, config.seed, parallel, truncation=config["engine.truncation"]
        )
        floor = paley_zygmund_floor(second_moment_field(n, point.sigma2, f))
        checks.append(
            bound_check(f"truncated mean above Paley-Zygmund floor at theta={theta:g}", summary, floor, upper=False)
        )
        estimates.append(summary)
        rows.append(
            {
                "theta": theta,
                "beta": point.beta,
                "sigma2": point.sigma2,
                "truncated_mean": summary.estimate,
                "stderr": summary.stderr,
                "minus_log": -math.log(summary.estimate) if summary.estimate > 0 else math.inf,
                "paley_zygmund_floor": floor,
            }
        )
    checks.extend(_decay_checks(thetas, estimates))

    summary_dict = {
        "N": n,
        "start": label,
        "estimates": {f"{theta:g}": summary_fields(summary) for theta, summary in zip(thetas, estimates)},
    }
    plot = PlotSpec(
        x="theta",
        series=[
            Series("truncated_mean", "E[Z_N(U) ∧ 1]", error_column="stderr"),
            Series("paley_zygmund_floor", "1 / (1 + E[Z^2])", style="lines"),
        ],
        title=f"Truncated mean against theta at N={n}",
        x_label="theta",
        y_label="E[Z ∧ 1]",
        log_y=True,
    )
    blocks = blocks_frame([(f"E[Z ∧ 1] at theta={theta:g}", s) for theta, s in zip(thetas, estimates)])
    return ExperimentResult(pd.DataFrame(rows), summary_dict, checks, plot, blocks)


def proxy_report(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Exact and sampled moments of the strip proxy and the Chebyshev bounds of its event."""
    n, beta = config.horizon, config.beta
    theta = calibrated_theta(config)
    eta = config["proxy.eta"] if config["proxy.eta"] is not None else eta_rule(theta)
    strips = make_strips(n, eta)
    sites = tilted_mean_grid(strips.n_tilde, config["proxy.grid_max"])

    report = event_report(
        config.model, beta, strips, config.reps, config.seed, config["proxy.truncation"], sites, parallel
    )
    bound_sum, bound_sum_stderr = event_bound_sum(report)
    summary = {
        **report.to_summary(),
        "theta": theta,
        "event_bound_sum": {"estimate": bound_sum, "stderr": bound_sum_stderr},
    }
    plot = PlotSpec(
        x="x1",
        series=[Series("tilted_mean", "E~_x[X]", style="points")],
        title=f"Size-biased proxy mean on the start grid (N={n}, eta={eta:.4g})",
        x_label="x1",
        y_label="E~_x[X]",
    )
    blocks = blocks_frame(
        [
            ("mean", report.mean),
            ("variance", report.variance),
            ("event probability", report.event_probability),
            ("tilted mean", report.tilted.mean),
            ("tilted variance", report.tilted.variance),
            ("tilted complement probability", report.tilted_complement_probability),
        ]
    )
    return ExperimentResult(report.moments.to_frame(), summary, report.checks, plot, blocks)


def stretches(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Estimate the stretch probabilities ``J_l`` of two renewals on a strip and their exponential decay."""
    n_tilde, ell_max = config["stretches.n_tilde"], config["stretches.ell_max"]
    estimates = stretch_prob_mc(n_tilde, ell_max, config.reps, config.seed, parallel)

    slope: Optional[float]
    try:
        slope = stretch_decay_slope(estimates, 2, min(ell_max, 6))
    except DomainException as e:
        logger.warning(f"No decay slope of the stretch probabilities: {e}")
        slope = None
    if slope is None:
        checks = [Check(STRETCH_DECAY_CHECK, False, math.nan)]
    else:
        checks = [Check(STRETCH_DECAY_CHECK, slope <= STRETCH_DECAY_SLOPE, STRETCH_DECAY_SLOPE - slope)]
        if slope > STRETCH_DECAY_SLOPE:
            logger.warning(f"Fitted stretch decay slope {slope:.4f} is above log(1/2) at N~={n_tilde}")

    summary = {"N_tilde": n_tilde, "ell_max": ell_max, "reps": estimates.reps, "decay_slope": slope}
    plot = PlotSpec(
        x="ell",
        series=[Series("J", "J_l", error_column="stderr")],
        title=f"Alternating stretches of two renewals on a strip of length {n_tilde}",
        x_label="l",
        y_label="J_l",
        log_y=True,
    )
    return ExperimentResult(estimates.to_frame(), summary, checks, plot)


def free_energy_experiment(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Estimate ``E[log Z_N] / N`` along ``sweep.horizons`` at the configured disorder strength."""
    beta = config.beta
    sigma2 = config.model.pair_variance(beta)
    estimate = free_energy(config.model, beta, config["sweep.horizons"], config.reps, config.seed, parallel)
    log_gap = log_gap_to_critical_scale(estimate.estimate.estimate, sigma2)

    checks = list(estimate.checks)
    if beta > 0:
        margin = FREE_ENERGY_LOG_BAND - abs(log_gap)
        checks.append(Check("log free energy within 3 of -pi / sigma2", bool(margin >= 0), margin))

    summary = {
        "beta": beta,
        "sigma2": sigma2,
        "free_energy": summary_fields(estimate.estimate),
        "finite_size_band": estimate.band,
        "log_gap_to_critical_scale": log_gap,
        "critical_scale": -math.pi / sigma2 if sigma2 > 0 else None,
    }
    plot = PlotSpec(
        x="N",
        series=[Series("mean_log_z_per_n", "E[log Z_N] / N", error_column="stderr")],
        title=f"Finite-horizon free energy at beta={beta:.4g}",
        x_label="N",
        y_label="E[log Z_N] / N",
        log_x=True,
    )
    blocks = blocks_frame([(f"E[log Z_N] / N at N={n}", s) for n, s in zip(estimate.horizons, estimate.per_horizon)])
    return ExperimentResult(estimate.to_frame(), summary, checks, plot, blocks)


def finite_volume(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Evaluate the finite-volume criterion at scale ``L = calib.n`` and audit the change of scale."""
    model, scale, beta = config.model, config.horizon, config.beta
    grid_max = config["volume.grid_max"]
    report = finite_volume_criterion(
        model, scale, beta, config.reps, config.seed, config["volume.m_list"], parallel, grid_max
    )
    audit = change_of_scale_audit(
        model, scale, beta, math.sqrt(scale) / SCALE_RATIO, config.reps, config.seed, parallel, grid_max
    )

    summary = {
        **report.to_summary(),
        "change_of_scale": {
            "small": summary_fields(audit.small.sup),
            "large": summary_fields(audit.large.sup),
            "factor": audit.factor,
        },
    }
    plot = PlotSpec(
        x="start",
        series=[Series("estimate", "E[Z_L(f)^(1/2)]", error_column="stderr", style="points")],
        title=f"Half moments on the start grid at L={scale}",
        x_label="starting law",
        y_label="E[Z^(1/2)]",
        x_labels_column="start",
    )
    blocks = blocks_frame([(start.label, s) for start, s in zip(report.grid.laws, report.grid.estimates)])
    return ExperimentResult(report.to_frame(), summary, report.checks + [audit.check], plot, blocks)


def skeleton_q(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Estimate the skeleton weights ``Q(y)`` at scale ``skeleton.n0`` and the bookkeeping sum."""
    scale, k = config["skeleton.n0"], config["skeleton.k"]
    targets = displacements(max(k, max(TAIL_RADII)))
    estimate = skeleton_estimates(
        config.model,
        scale,
        config.beta,
        targets,
        config.reps,
        config.seed,
        parallel,
        config["volume.grid_max"],
        truncation_order=k,
    )
    target = math.exp(-1)
    total = bookkeeping_sum(k)
    checks = estimate.checks + [Check("bookkeeping sum below exp(-1)", total < target, target - total)]

    plot = PlotSpec(
        x="l1",
        series=[
            Series("q", "Q(y)", error_column="stderr", style="points"),
            Series("tail_bound", "exp(-(|y|_1 - 2)^2 / 4)", style="points"),
        ],
        title=f"Skeleton weights at N0={scale}",
        x_label="|y|_1",
        y_label="Q(y)",
        log_y=True,
    )
    blocks = blocks_frame([(f"Q({y[0]},{y[1]})", s) for y, s in zip(estimate.displacements, estimate.estimates)])
    return ExperimentResult(estimate.to_frame(), estimate.to_summary(), checks, plot, blocks)


def tv_identity(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Both routes to ``E[Z ∧ 1]`` next to the sandwich, Paley-Zygmund and change-of-measure inequalities."""
    model, n, beta = config.model, config.horizon, config.beta
    reps, seed, truncation = config.reps, config.seed, config["engine.truncation"]
    gamma = config["fractional.gamma"]
    label, radius = _uniform_start(n)
    f = uniform_ball(radius)

    identity = sizebias_tv(model, n, beta, f, reps, seed, parallel, truncation)
    blocks = partition_samples(model, n, beta, f, reps, seed, parallel, truncation=truncation)
    moment = summarize([np.power(block, gamma) for block in blocks], seed)
    floor_check = paley_zygmund_check(identity.truncated_mean, n, model.pair_variance(beta), f)

    checks = identity.checks + sandwich_checks(blocks, seed) + [floor_check] + change_of_measure_audit(blocks, seed)
    estimates = [
        ("E[Z ∧ 1]", identity.truncated_mean),
        (f"E[Z^{gamma:g}]", moment),
        ("P(Z >= 1)", identity.event_probability),
        ("P~(Z < 1)", identity.tilted_complement_probability),
        ("P(Z >= 1) + P~(Z < 1)", identity.event_route),
    ]
    table = pd.DataFrame(
        {
            "quantity": [name for name, _ in estimates],
            "estimate": [s.estimate for _, s in estimates],
            "stderr": [s.stderr for _, s in estimates],
        }
    )
    summary = {"N": n, "beta": beta, "start": label, "gamma": gamma}
    summary.update({name: summary_fields(s) for name, s in estimates})
    plot = PlotSpec(
        x="quantity",
        series=[Series("estimate", "estimate", error_column="stderr", style="points")],
        title=f"Total variation identity at N={n}, beta={beta:.4g}",
        x_label="",
        y_label="value",
        x_labels_column="quantity",
    )
    return ExperimentResult(table, summary, checks, plot, blocks_frame(estimates))


def _horizon_beta(config: ExperimentConfig, n: int) -> float:
    if config["calib.theta"] is None:
        return config.beta
    return solve_beta(config.model, n, config["calib.theta"]).beta


def appendix_b(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Collision moments of two walks and the mean log partition function along ``sweep.horizons``.

    At every horizon the pair variance is calibrated from ``calib.theta`` (or fixed by ``calib.beta``) and the
    collision reward is ``lambda = log(1 + sigma²)``, so ``E[exp(lambda L_N)]`` is the second moment ``B(N)``.
    """
    model = config.model
    rows, checks, estimates = [], [], []
    for n in config["sweep.horizons"]:
        beta = _horizon_beta(config, n)
        sigma2 = model.pair_variance(beta)
        lambda2 = math.log1p(sigma2)
        r_n = overlap_sum(n).r_n

        plain = collision_moment(n, 0.0)
        walk = collision_moment(n, lambda2)
        renewal = collision_moment_renewal(n, lambda2)
        checks.append(
            exact_check(f"mean collision count equals R_N at N={n}", plain.l_exp_moment, r_n, COLLISION_MEAN_TOLERANCE)
        )
        checks.append(
            exact_check(
                f"collision moment routes agree at N={n}",
                walk.log_exp_moment,
                renewal.log_exp_moment,
                COLLISION_ROUTE_TOLERANCE,
            )
        )
        ratio = beta ** 2 * (1 + 1 / sigma2) * walk.l_exp_moment / math.log(n) ** 2 if sigma2 > 0 else math.nan

        log_z = mean_log_partition(model, n, beta, config.reps, config.seed, parallel)
        gradient = gradient_norm(model, n, beta, config.reps, config.seed, parallel)
        estimates += [(f"E[log Z_N] at N={n}", log_z), (f"E|grad log Z_N|^2 at N={n}", gradient)]
        rows.append(
            {
                "N": n,
                "beta": beta,
                "sigma2": sigma2,
                "lambda2": lambda2,
                "R_N": r_n,
                "log_exp_moment": walk.log_exp_moment,
                "l_exp_moment": walk.l_exp_moment,
                "collision_ratio": ratio,
                "mean_log_z": log_z.estimate,
                "mean_log_z_stderr": log_z.stderr,
                "grad_norm": gradient.estimate,
                "grad_norm_stderr": gradient.stderr,
            }
        )

    table = pd.DataFrame(rows)
    ratios = table["collision_ratio"].to_numpy()
    spread: Optional[float] = None
    if len(ratios) >= 2 and np.all(np.isfinite(ratios)) and np.all(ratios > 0):
        spread = float((ratios.max() - ratios.min()) / ratios.min())
        margin = COLLISION_RATIO_SPREAD - spread
        checks.append(Check("collision ratio varies by less than 50%", margin >= 0, margin))

    summary = {"horizons": list(config["sweep.horizons"]), "collision_ratio_spread": spread}
    plot = PlotSpec(
        x="N",
        series=[Series("collision_ratio", "beta^2 (1 + 1/sigma^2) E[L e^{lambda L}] / (log N)^2")],
        title="Collision moments at critical calibration",
        x_label="N",
        y_label="ratio",
        log_x=True,
    )
    return ExperimentResult(table, summary, checks, plot, blocks_frame(estimates))
