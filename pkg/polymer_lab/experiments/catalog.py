from typing import (
    Callable,
    Dict,
    List,
    NamedTuple,
    Optional,
)

from polymer_lab.services import ParallelContext

from . import (
    exact_drivers,
    mc_drivers,
)
from .config import ExperimentConfig
from .result import ExperimentResult

Driver = Callable[[ExperimentConfig, Optional[ParallelContext]], ExperimentResult]


class Experiment(NamedTuple):
    name: str
    description: str  #: One line shown by ``polymer_lab list``
    statement: str  #: Statement the declared checks verify
    driver: Driver


CATALOG: List[Experiment] = [
    Experiment(
        "kernels",
        "Return masses u(n) and overlap sums R_n of the planar walk",
        "u(n) = (binom(2n, n) 4^-n)^2 and 0 <= pi R_N - log N - alpha <= pi / N",
        exact_drivers.kernels,
    ),
    Experiment(
        "calibrate",
        "Disorder strength beta(N, theta) of the critical window",
        "theta(N, beta(N, theta)) = theta and both routes to exp(theta) agree",
        exact_drivers.calibrate,
    ),
    Experiment(
        "decay-vs-theta",
        "Truncated mean E[Z_N(U) ∧ 1] along a sweep of theta",
        "E[Z ∧ 1] decreases in theta, -log E[Z ∧ 1] is convex and stays above 1 / (1 + E[Z²])",
        mc_drivers.decay_vs_theta,
    ),
    Experiment(
        "second-moment",
        "Exact second moment of the averaged partition function",
        "log log E[Z_N(U)²] <= theta - gamma + 1/2",
        exact_drivers.second_moment,
    ),
    Experiment(
        "truncated-variance",
        "Low-order chaos variances and their bracket constants",
        "sigma² V(N~/2) and sigma² V(N~) are comparable to exp(theta - eta) / (theta - eta)",
        exact_drivers.truncated_variance,
    ),
    Experiment(
        "proxy-report",
        "Strip proxy statistic: exact moments, sampled moments and Chebyshev bounds",
        "P(X > E~/2) <= 4 Var(X) / E~² and P~(X <= E~/2) <= 4 Var~(X) / E~²",
        mc_drivers.proxy_report,
    ),
    Experiment(
        "stretches",
        "Alternating stretches of two independent renewals on a strip",
        "log J_l falls by at least log 2 per stretch over l = 2..6",
        mc_drivers.stretches,
    ),
    Experiment(
        "free-energy",
        "Finite-horizon quenched free energy E[log Z_N] / N",
        "F(beta) < 0 and log|F(beta)| is within 3 of -pi / sigma²",
        mc_drivers.free_energy_experiment,
    ),
    Experiment(
        "finite-volume",
        "Finite-volume criterion for the half moment",
        "sup_f E[Z_L(f)^(1/2)] <= 1/300 implies E[Z_mL(f)^(1/2)] <= 3 exp(-m)",
        mc_drivers.finite_volume,
    ),
    Experiment(
        "skeleton-q",
        "Coarse-grained skeleton weights Q(y)",
        "Q(y) <= exp(-(|y|_1 - 2)² / 4) and the bookkeeping sum stays below exp(-1)",
        mc_drivers.skeleton_q,
    ),
    Experiment(
        "tv-identity",
        "Truncated mean against the size-biased law",
        "E[Z ∧ 1] = P(Z >= 1) + P~(Z < 1) with the sandwich and change-of-measure inequalities",
        mc_drivers.tv_identity,
    ),
    Experiment(
        "appendix-b",
        "Collision moments and log-partition concentration",
        "E[L_N] = R_N and beta² (1 + 1/sigma²) E[L exp(lambda L)] / (log N)² stays bounded",
        mc_drivers.appendix_b,
    ),
]

_BY_NAME: Dict[str, Experiment] = {experiment.name: experiment for experiment in CATALOG}


def experiment_names() -> List[str]:
    """Names of the catalog in listing order."""
    return [experiment.name for experiment in CATALOG]


def get_experiment(name: str) -> Experiment:
    """Look up a catalog entry.

    Raises:
        KeyError: If ``name`` is not part of the catalog.

    """
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"Unknown experiment {name!r}, expected one of: {', '.join(experiment_names())}") from None
