from .audits import (
    ScaleAudit,
    change_of_measure_audit,
    change_of_scale_audit,
)
from .finite_volume import (
    FiniteVolumeReport,
    finite_volume_criterion,
)
from .fractional import (
    FractionalMoment,
    fractional_moment,
    paley_zygmund_check,
    sandwich_checks,
    truncated_mean,
)
from .free_energy import (
    FreeEnergyEstimate,
    free_energy,
    gradient_norm,
    log_gap_to_critical_scale,
    mean_log_partition,
)
from .replicas import (
    agreement_check,
    bound_check,
    check_fields,
    exact_check,
    partition_samples,
    summarize,
    summary_fields,
)
from .skeleton import (
    SkeletonEstimate,
    bookkeeping_sum,
    displacements,
    gaussian_tail,
    skeleton_estimates,
    skeleton_q,
)
from .starts import (
    GridSupremum,
    StartLaw,
    half_moment_supremum,
    start_grid,
    start_samples,
)
from .tv import (
    TvIdentity,
    sizebias_tv,
)

__all__ = [
    "ScaleAudit",
    "change_of_measure_audit",
    "change_of_scale_audit",
    "FiniteVolumeReport",
    "finite_volume_criterion",
    "FractionalMoment",
    "fractional_moment",
    "paley_zygmund_check",
    "sandwich_checks",
    "truncated_mean",
    "FreeEnergyEstimate",
    "free_energy",
    "gradient_norm",
    "log_gap_to_critical_scale",
    "mean_log_partition",
    "agreement_check",
    "bound_check",
    "check_fields",
    "exact_check",
    "partition_samples",
    "summarize",
    "summary_fields",
    "SkeletonEstimate",
    "bookkeeping_sum",
    "displacements",
    "gaussian_tail",
    "skeleton_estimates",
    "skeleton_q",
    "GridSupremum",
    "StartLaw",
    "half_moment_supremum",
    "start_grid",
    "start_samples",
    "TvIdentity",
    "sizebias_tv",
]
