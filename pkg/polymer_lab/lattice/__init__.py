from .dickman import (
    DickmanValue,
    dickman_density,
    dickman_laplace,
    dickman_laplace_constant,
)
from .geometry import (
    crop,
    embed,
    resize,
    rotated_offsets,
    shell_positions,
    site_index,
    slice_sites,
    step_backward,
    step_forward,
)
from .kernels import (
    KernelTable,
    OverlapSum,
    build_kernel_table,
    convolved_return_masses,
    iter_kernel_slices,
    kernel_marginal,
    kernel_slice,
    local_clt_gap,
    local_clt_kernel,
    overlap_sum,
    overlap_sum_exact,
    overlap_sums,
    return_mass,
    return_mass_exact,
    return_masses,
    step_kernel,
    step_kernel_exact,
    validate_return_masses,
)
from .laplace import (
    LaplaceOverlap,
    laplace_overlap,
)
from .renewal import (
    RenewalLaw,
    renewal_arrival_laws,
    renewal_hit_prob,
    renewal_law,
    renewal_subset_sums,
)

__all__ = [
    "DickmanValue",
    "dickman_density",
    "dickman_laplace",
    "dickman_laplace_constant",
    "crop",
    "embed",
    "resize",
    "rotated_offsets",
    "shell_positions",
    "site_index",
    "slice_sites",
    "step_backward",
    "step_forward",
    "KernelTable",
    "OverlapSum",
    "build_kernel_table",
    "convolved_return_masses",
    "iter_kernel_slices",
    "kernel_marginal",
    "kernel_slice",
    "local_clt_gap",
    "local_clt_kernel",
    "overlap_sum",
    "overlap_sum_exact",
    "overlap_sums",
    "return_mass",
    "return_mass_exact",
    "return_masses",
    "step_kernel",
    "step_kernel_exact",
    "validate_return_masses",
    "LaplaceOverlap",
    "laplace_overlap",
    "RenewalLaw",
    "renewal_arrival_laws",
    "renewal_hit_prob",
    "renewal_law",
    "renewal_subset_sums",
]
