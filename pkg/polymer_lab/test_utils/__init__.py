from .enumeration import (
    chaos_coefficients,
    chaos_product_exact,
    cone_cells,
    exact_partition,
    path_partition,
    rademacher_moment_exact,
    random_mass,
    subset_return_mass_sum,
    to_exact_mass,
    walk_paths,
)

__all__ = [
    "chaos_coefficients",
    "chaos_product_exact",
    "cone_cells",
    "exact_partition",
    "path_partition",
    "rademacher_moment_exact",
    "random_mass",
    "subset_return_mass_sum",
    "to_exact_mass",
    "walk_paths",
]
