"""The ``master_config`` script contains static configuration and default values used in all environments."""
import logging

from . import __version__

#: Version string embedded in every emitted artifact.
artifact_version = __version__

#: Default output location for experiment artifacts written by :class:`~polymer_lab.services.ArtifactOutput`.
default_output_location = "results"
#: Default master seed when neither the config file nor the CLI provides one.
default_seed = 20240601
#: Default number of Monte Carlo replicas.
default_reps = 1024

#: Number of worker processes for replica blocks, overridden by ``POLYMER_LAB_WORKERS``.
max_parallel_workers = 1
#: Replicas per block; blocks are the unit of parallel work and of the jackknife.
replica_block_size = 64
#: Number of standard errors granted to every Monte Carlo inequality check.
confidence_sigmas = 3.0

#: Numeric format of every CSV artifact (17 significant digits, no locale).
csv_float_format = "%.17g"

#: Upper bound for materialized disorder fields in bytes.
field_memory_cap_bytes = 2 * 1024 ** 3
#: Fields up to this horizon keep the full cone unless a truncation is requested.
exact_cone_max_horizon = 512
#: Longer fields are truncated at half-width ``r0 + c * sqrt(N log N)`` with this ``c``.
cone_truncation_factor = 3.0
#: Largest horizon for which a field snapshot may be exported as CSV.
field_export_max_horizon = 8
#: Slices of the transfer matrix are renormalized once their maximum leaves ``[2**-32, 2**32]``.
renormalization_lower = 2.0 ** -32
renormalization_upper = 2.0 ** 32

#: Largest time up to which kernel slices are evolved by convolution to validate the closed form.
kernel_convolution_limit = 64
#: Relative tolerance between convolved and closed-form return masses.
kernel_validation_tolerance = 1e-13
#: Return masses up to this time are computed in exact rational arithmetic before rounding.
exact_return_mass_limit = 512

#: Bisection settings for calibrating the disorder strength.
calibration_beta_lower = 1e-8
calibration_beta_upper_limit = 64.0
calibration_max_iterations = 200
#: Relative tolerance on the pair variance when solving for the disorder strength.
calibration_relative_tolerance = 1e-12
#: Tolerance between the two routes to ``theta`` and ``exp(theta)``.
theta_route_tolerance = 1e-10
#: Largest accepted deviation of theta after solving for the disorder strength and evaluating theta again.
calibration_roundtrip_tolerance = 1e-9
#: Relative tolerance between the second moment recursion and its renewal series.
renewal_series_tolerance = 1e-10

#: Absolute error target of the Dickman density quadrature.
dickman_quad_tolerance = 1e-11

#: The truncated proxy is only evaluated up to this effective horizon.
truncated_proxy_max_horizon = 12
#: Maximal number of starting sites on the grid of size-biased means.
proxy_grid_max_sites = 10_000
#: Maximal number of Dirac starts evaluated on grids of balls.
dirac_grid_max_sites = 25

#: Logging output directory name.
log_output_location = "logs"
#: Log level for file logging.
log_level_file = logging.DEBUG
#: Log level for console logging.
log_level_console = logging.INFO
#: Logging format as defined in :class:`~logging.Formatter`.
logging_format = "%(asctime)s::%(levelname)s::%(name)s::%(experiment)s::%(message)s"

#: Logging timestamp format as defined in :class:`~logging.Formatter`.
logging_timestamp_format = "%Y-%m-%d %H:%M:%S"
