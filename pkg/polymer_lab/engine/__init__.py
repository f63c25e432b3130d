from .collision import (
    CollisionMoment,
    collision_moment,
    collision_moment_renewal,
)
from .field import (
    DiamondField,
    cone_half_widths,
    default_cone_truncation,
    field_memory_estimate,
    sample_field,
)
from .sizebias import (
    SizeBiasedSample,
    sample_path,
    sizebias_sample,
)
from .transfer import (
    backward_pass,
    forward_pass,
    grad_log_norm,
    grad_log_norm_terms,
    partition_all_starts,
    partition_constrained,
    partition_field,
    start_sites,
)

__all__ = [
    "CollisionMoment",
    "collision_moment",
    "collision_moment_renewal",
    "DiamondField",
    "cone_half_widths",
    "default_cone_truncation",
    "field_memory_estimate",
    "sample_field",
    "SizeBiasedSample",
    "sample_path",
    "sizebias_sample",
    "backward_pass",
    "forward_pass",
    "grad_log_norm",
    "grad_log_norm_terms",
    "partition_all_starts",
    "partition_constrained",
    "partition_field",
    "start_sites",
]
