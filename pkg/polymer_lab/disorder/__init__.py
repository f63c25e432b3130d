from .calibration import (
    solve_beta,
    target_pair_variance,
    theta_of,
)
from .models import (
    BoundedUniformDisorder,
    DisorderModel,
    GaussianDisorder,
    RademacherDisorder,
    disorder_model,
    tilted_sample,
)

__all__ = [
    "solve_beta",
    "target_pair_variance",
    "theta_of",
    "BoundedUniformDisorder",
    "DisorderModel",
    "GaussianDisorder",
    "RademacherDisorder",
    "disorder_model",
    "tilted_sample",
]
