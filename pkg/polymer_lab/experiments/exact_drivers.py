"""Drivers of the experiments that only use exact (non-random) computations."""
import logging
import math
from typing import (
    Optional,
    Tuple,
)

import pandas as pd
from polymer_lab import master_config
from polymer_lab.disorder import (
    solve_beta,
    theta_of,
)
from polymer_lab.lattice import (
    build_kernel_table,
    local_clt_gap,
    validate_return_masses,
)
from polymer_lab.moments import (
    check_renewal_series,
    hat_moment,
    moment_series,
    quasicritical_bound_check,
    uniform_ball,
    variance_bracket,
)
from polymer_lab.proxy import eta_rule
from polymer_lab.services import ParallelContext
from polymer_lab.static import (
    EULER_GAMMA,
    Check,
    DomainException,
    KernelMode,
)

from .config import ExperimentConfig
from .plot import (
    PlotSpec,
    Series,
)
from .result import ExperimentResult

logger = logging.getLogger("experiments")


def calibrated_theta(config: ExperimentConfig) -> float:
    """Effective disorder parameter of the configured calibration point.

    Raises:
        DomainException: If the calibration has no disorder (``calib.beta = 0``).

    """
    if config["calib.theta"] is not None:
        return float(config["calib.theta"])
    theta = theta_of(config.model, config.horizon, config.beta)
    if theta.is_minus_infinity:
        raise DomainException("This experiment needs a positive disorder strength, calib.beta is 0")
    return float(theta.value)  # type: ignore


def _tolerance_check(name: str, deviation: float, tolerance: float) -> Check:
    return Check(name, bool(deviation <= tolerance), float(tolerance - deviation))


def kernels(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Tabulate ``u(n)`` and ``R_n`` up to ``calib.n`` and validate the closed form."""
    n = config.horizon
    radius = config["kernels.window_radius"]
    times = config["kernels.window_times"]
    limit = min(config["kernels.convolution_limit"], n)

    table = build_kernel_table(n, radius, times, KernelMode.exact, convolution_limit=limit)
    deviation = validate_return_masses(limit, tolerance=math.inf)
    overlap = table.overlap_sum(n)
    gap_limit = math.pi / n

    checks = [
        _tolerance_check("closed form matches convolution", deviation, master_config.kernel_validation_tolerance),
        Check(
            "overlap constant gap within [0, pi/N]",
            bool(0 <= overlap.alpha_gap <= gap_limit),
            float(min(overlap.alpha_gap, gap_limit - overlap.alpha_gap)),
        ),
    ]
    summary = {
        "N": n,
        "R_N": overlap.r_n,
        "alpha_N": overlap.alpha_n,
        "alpha_gap": overlap.alpha_gap,
        "convolution_limit": limit,
        "max_relative_deviation": deviation,
        "local_clt_gap": {str(t): local_clt_gap(t, radius) for t in times},
    }
    plot = PlotSpec(
        x="n",
        series=[Series("u_n", "u(n)"), Series("R_n", "R_n")],
        title=f"Return masses and overlap sums up to N={n}",
        x_label="n",
        y_label="value",
        log_x=True,
        log_y=True,
    )
    return ExperimentResult(table.to_frame(), summary, checks, plot)


def calibrate(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Solve for the disorder strength at every theta of ``sweep.thetas`` and evaluate theta again."""
    model, n = config.model, config.horizon
    rows, checks = [], []
    for theta in config["sweep.thetas"]:
        point = solve_beta(model, n, theta)
        back = theta_of(model, n, point.beta)
        roundtrip = abs(float(back.value) - theta)  # type: ignore
        checks.append(
            _tolerance_check(
                f"calibration round trip at theta={theta:g}", roundtrip, master_config.calibration_roundtrip_tolerance
            )
        )
        if back.exp_value > 0:
            route = abs(math.log(back.exp_value) - float(back.value))  # type: ignore
            checks.append(
                _tolerance_check(f"exp(theta) routes at theta={theta:g}", route, master_config.theta_route_tolerance)
            )
        rows.append(
            {
                "theta": theta,
                "beta": point.beta,
                "sigma2": point.sigma2,
                "theta_roundtrip": back.value,
                "exp_theta": back.exp_value,
            }
        )

    beta = config.beta
    summary = {
        "N": n,
        "family": config["disorder.family"].value,
        "beta": beta,
        "theta": theta_of(model, n, beta).value,
        "sigma2": model.pair_variance(beta),
    }
    plot = PlotSpec(
        x="theta",
        series=[Series("beta", "beta(N, theta)")],
        title=f"Calibrated disorder strength at N={n}",
        x_label="theta",
        y_label="beta",
    )
    return ExperimentResult(pd.DataFrame(rows), summary, checks, plot)


def second_moment(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Compare ``log log E[Z_N(U)²]`` with ``theta - gamma`` for every theta of ``sweep.thetas``."""
    n = config.horizon
    rows, checks = [], []
    for theta in config["sweep.thetas"]:
        report = quasicritical_bound_check(n, theta)
        bound = theta - EULER_GAMMA + 0.5
        deviation = check_renewal_series(n, report.sigma2, tolerance=math.inf)
        checks.append(
            Check(
                f"log log second moment below theta - gamma + 1/2 at theta={theta:g}",
                bool(report.log_log_moment <= bound),
                float(bound - report.log_log_moment),
            )
        )
        checks.append(
            _tolerance_check(
                f"renewal series matches recursion at theta={theta:g}",
                deviation,
                master_config.renewal_series_tolerance,
            )
        )
        rows.append(
            {
                "theta": theta,
                "sigma2": report.sigma2,
                "second_moment": report.second_moment,
                "log_log_moment": report.log_log_moment,
                "bound": bound,
                "ratio": report.ratio,
                "paley_zygmund_floor": report.paley_zygmund_floor,
                "renewal_deviation": deviation,
            }
        )

    table = pd.DataFrame(rows)
    summary = {"N": n, "start": f"uniform({math.sqrt(n):.6g})", "largest_ratio": float(table["ratio"].max())}
    plot = PlotSpec(
        x="theta",
        series=[Series("log_log_moment", "log log E[Z_N(U)^2]"), Series("bound", "theta - gamma + 1/2", style="lines")],
        title=f"Second moment of the averaged partition function at N={n}",
        x_label="theta",
        y_label="log log second moment",
    )
    return ExperimentResult(table, summary, checks, plot)


def _bracket_ends(bracket: pd.DataFrame) -> Tuple[float, float]:
    return float(bracket["lower_ratio"].min()), float(bracket["upper_ratio"].max())


def truncated_variance(config: ExperimentConfig, parallel: Optional[ParallelContext] = None) -> ExperimentResult:
    """Fit the bracket constants of the truncated variances and check the truncated covariance at ``calib.n``."""
    n = config.horizon
    theta = calibrated_theta(config)
    eta = config["proxy.eta"] if config["proxy.eta"] is not None else eta_rule(theta)
    bracket = variance_bracket(theta, eta, config["sweep.horizons"])
    c_lower, c_upper = _bracket_ends(bracket)

    sigma2 = config.model.pair_variance(config.beta)
    series = moment_series(n, sigma2, config["moments.truncation"])
    f = uniform_ball(math.sqrt(n))
    hat = hat_moment(n, sigma2, series.truncation, f, f)

    checks = [
        Check(
            "truncated covariance within bracket",
            hat.holds,
            float(min(hat.value - hat.lower, hat.upper - hat.value)),
        ),
        Check(
            "truncated variance below second moment",
            bool(series.v[n] <= series.b[n]),  # type: ignore
            float(series.b[n] - series.v[n]),  # type: ignore
        ),
    ]
    for row in bracket.itertuples():
        margin = float(row.upper_ratio - row.lower_ratio)
        checks.append(Check(f"bracket ordered at N={row.n}", margin >= 0, margin))
    summary = {
        "N": n,
        "theta": theta,
        "eta": eta,
        "K": series.truncation,
        "c": c_lower,
        "c_prime": c_upper,
        "B_N": float(series.b[n]),
        "V_N_K": float(series.v[n]),  # type: ignore
        "hat_moment": {"value": hat.value, "lower": hat.lower, "upper": hat.upper},
    }
    logger.info(f"Bracket constants at theta={theta:g}, eta={eta:.4g}: c={c_lower:.4f}, c'={c_upper:.4f}")
    plot = PlotSpec(
        x="n",
        series=[Series("lower_ratio", "sigma^2 V(N~/2) / scale"), Series("upper_ratio", "sigma^2 V(N~) / scale")],
        title=f"Truncated variance bracket at theta={theta:g}, eta={eta:.4g}",
        x_label="N",
        y_label="ratio to exp(theta - eta) / (theta - eta)",
        log_x=True,
    )
    return ExperimentResult(bracket, summary, checks, plot)
