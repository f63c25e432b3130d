from .exact import (
    collision_kernel_exact,
    hat_moment_exact,
    second_moment_field_exact,
    second_moment_point_exact,
    truncated_variance_exact,
)
from .mass import (
    MassFunction,
    ball_pieces,
    dirac,
    disc_grid,
    uniform_ball,
)
from .overlap import (
    collision_kernel,
    difference_mass,
    green_weighted,
)
from .second_moment import (
    MomentSeries,
    QuasicriticalReport,
    check_renewal_series,
    paley_zygmund_floor,
    quasicritical_bound_check,
    renewal_series_second_moment,
    second_moment_derivative,
    second_moment_field,
    second_moment_point,
)
from .stretches import (
    StretchProbabilities,
    count_stretches,
    stretch_decay_slope,
    stretch_prob_mc,
)
from .truncated import (
    HatMoment,
    default_truncation,
    hat_moment,
    moment_series,
    subset_sums_by_order,
    truncated_variance,
    variance_bracket,
)

__all__ = [
    "collision_kernel_exact",
    "hat_moment_exact",
    "second_moment_field_exact",
    "second_moment_point_exact",
    "truncated_variance_exact",
    "MassFunction",
    "ball_pieces",
    "dirac",
    "disc_grid",
    "uniform_ball",
    "collision_kernel",
    "difference_mass",
    "green_weighted",
    "MomentSeries",
    "QuasicriticalReport",
    "check_renewal_series",
    "paley_zygmund_floor",
    "quasicritical_bound_check",
    "renewal_series_second_moment",
    "second_moment_derivative",
    "second_moment_field",
    "second_moment_point",
    "StretchProbabilities",
    "count_stretches",
    "stretch_decay_slope",
    "stretch_prob_mc",
    "HatMoment",
    "default_truncation",
    "hat_moment",
    "moment_series",
    "subset_sums_by_order",
    "truncated_variance",
    "variance_bracket",
]
