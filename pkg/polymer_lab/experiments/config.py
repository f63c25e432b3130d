"""Experiment configuration files.

A configuration is a flat text file of ``key = value`` lines with dotted section names, ``#`` comments and
comma-separated lists::

    disorder.family = gaussian
    calib.n = 1024
    calib.theta = 2
    run.reps = 10000

Every key of :data:`SCHEMA` has a parser and a default; unknown keys are rejected. The resolved configuration is
identified by the SHA-256 digest of its canonical ``key=value`` listing, which is embedded in every artifact.
"""
import hashlib
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Tuple,
)

from polymer_lab import master_config
from polymer_lab.disorder import (
    DisorderModel,
    disorder_model,
    solve_beta,
)
from polymer_lab.engine import (
    default_cone_truncation,
    field_memory_estimate,
)
from polymer_lab.lattice import overlap_sum
from polymer_lab.static import (
    ConfigurationException,
    DisorderFamily,
)

logger = logging.getLogger("experiments")

COMMENT = "#"


def _optional(parse: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse_optional(text: str) -> Any:
        return None if text.lower() in ("", "none") else parse(text)

    return parse_optional


def _list_of(parse: Callable[[str], Any]) -> Callable[[str], Tuple[Any, ...]]:
    def parse_list(text: str) -> Tuple[Any, ...]:
        return tuple(parse(item.strip()) for item in text.split(",") if item.strip())

    return parse_list


def _format(value: Any) -> str:
    if isinstance(value, DisorderFamily):
        return value.value
    if isinstance(value, tuple):
        return ",".join(_format(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return "none" if value is None else str(value)


class ConfigKey(NamedTuple):
    parse: Callable[[str], Any]
    default: Any
    help: str


#: Parser, default and help text of every configuration key.
SCHEMA: Dict[str, ConfigKey] = {
    "disorder.family": ConfigKey(DisorderFamily, DisorderFamily.gaussian, "Law of the environment."),
    "calib.n": ConfigKey(int, 1024, "Horizon N of the calibration and of single-horizon experiments."),
    "calib.beta": ConfigKey(_optional(float), None, "Disorder strength, exclusive with calib.theta."),
    "calib.theta": ConfigKey(_optional(float), None, "Effective disorder parameter, exclusive with calib.beta."),
    "run.seed": ConfigKey(int, master_config.default_seed, "Master seed of every random stream."),
    "run.reps": ConfigKey(int, master_config.default_reps, "Monte Carlo replicas."),
    "run.out": ConfigKey(_optional(str), None, "Output directory, the CLI option --out takes precedence."),
    "kernels.window_radius": ConfigKey(int, 4, "ℓ¹ radius of the persisted kernel window."),
    "kernels.window_times": ConfigKey(_list_of(int), (1, 2, 4), "Times of the persisted kernel slices."),
    "kernels.convolution_limit": ConfigKey(
        int, master_config.kernel_convolution_limit, "Validate closed-form return masses by convolution up to here."
    ),
    "sweep.thetas": ConfigKey(_list_of(float), (0.0, 1.0, 2.0, 3.0), "Values of theta of a sweep."),
    "sweep.horizons": ConfigKey(_list_of(int), (256, 512, 1024), "Horizons of a sweep, increasing."),
    "moments.truncation": ConfigKey(_optional(int), None, "Chaos truncation K, none for floor(log N)."),
    "proxy.eta": ConfigKey(_optional(float), None, "Strip parameter eta, none for max(theta / 3, log 2)."),
    "proxy.truncation": ConfigKey(_optional(int), None, "Chaos truncation of the proxy, none for the full proxy."),
    "proxy.grid_max": ConfigKey(int, master_config.proxy_grid_max_sites, "Sites of the size-biased mean grid."),
    "stretches.n_tilde": ConfigKey(int, 64, "Strip length of the renewal pairs."),
    "stretches.ell_max": ConfigKey(int, 6, "Largest stretch count."),
    "volume.m_list": ConfigKey(_list_of(int), (1, 2, 3), "Multiples m of the scale L = calib.n."),
    "volume.grid_max": ConfigKey(int, master_config.dirac_grid_max_sites, "Dirac starts of the disc grids."),
    "skeleton.n0": ConfigKey(int, 64, "Coarse-graining scale N0."),
    "skeleton.k": ConfigKey(int, 6, "Largest |y|_1 of the skeleton sum."),
    "engine.truncation": ConfigKey(
        _optional(int), None, "Half-width cap of sampled fields, none for the default cone truncation."
    ),
    "engine.memory_cap_mb": ConfigKey(
        int, master_config.field_memory_cap_bytes // 1024 ** 2, "Largest field the configuration may need, in MiB."
    ),
    "fractional.gamma": ConfigKey(float, 0.5, "Exponent of the fractional moment."),
}


def parse_lines(text: str) -> Tuple[Dict[str, str], List[str]]:
    """Split a configuration text into raw values.

    Returns:
        Raw values by key and syntax violations (missing ``=``, repeated keys).

    """
    raw: Dict[str, str] = {}
    violations = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split(COMMENT, 1)[0].strip()
        if not line:
            continue
        key, separator, value = line.partition("=")
        key = key.strip()
        if not separator or not key:
            violations.append(f"line {number}: expected 'key = value', got {line!r}")
            continue
        if key in raw:
            violations.append(f"line {number}: key {key} is given twice")
        raw[key] = value.strip()
    return raw, violations


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved values of every key of :data:`SCHEMA`."""

    values: Mapping[str, Any]

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    @property
    def model(self) -> DisorderModel:
        return disorder_model(self.values["disorder.family"])

    @property
    def horizon(self) -> int:
        return int(self.values["calib.n"])

    @property
    def seed(self) -> int:
        return int(self.values["run.seed"])

    @property
    def reps(self) -> int:
        return int(self.values["run.reps"])

    @property
    def beta(self) -> float:
        """Disorder strength, solved from ``calib.theta`` when only that is given."""
        if self.values["calib.beta"] is not None:
            return float(self.values["calib.beta"])
        return solve_beta(self.model, self.horizon, self.values["calib.theta"]).beta

    def listing(self) -> Dict[str, str]:
        """Formatted value of every key in sorted key order."""
        return {key: _format(self.values[key]) for key in sorted(self.values)}

    def canonical(self) -> str:
        """``key=value`` lines of every key in sorted order."""
        return "".join(f"{key}={value}\n" for key, value in self.listing().items())

    @property
    def digest(self) -> str:
        """SHA-256 of :meth:`canonical`."""
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()

    def provenance(self) -> Dict[str, str]:
        """Entries embedded in every artifact."""
        return {
            "config_digest": self.digest,
            "seed": str(self.seed),
            "artifact_version": master_config.artifact_version,
        }

    def with_seed(self, seed: Optional[int]) -> "ExperimentConfig":
        """Return the configuration with ``run.seed`` replaced, unless ``seed`` is ``None``."""
        if seed is None:
            return self
        return ExperimentConfig({**self.values, "run.seed": seed})


def _cross_field_violations(values: Mapping[str, Any]) -> List[str]:
    violations = []
    n = values["calib.n"]
    if n < 1:
        return [f"calib.n must be at least 1, got {n}"]

    limit = math.pi * overlap_sum(n).r_n
    if (values["calib.beta"] is None) == (values["calib.theta"] is None):
        violations.append("exactly one of calib.beta and calib.theta must be given")
    elif values["calib.theta"] is not None:
        theta = values["calib.theta"]
        if not theta < limit:
            violations.append(f"calibration out of range: calib.theta={theta} must stay below pi R_N={limit:.6g}")
    elif values["calib.beta"] < 0:
        violations.append(f"calib.beta must be non-negative, got {values['calib.beta']}")

    out_of_range = [theta for theta in values["sweep.thetas"] if not theta < limit]
    if out_of_range:
        violations.append(f"calibration out of range: sweep.thetas {out_of_range} must stay below pi R_N={limit:.6g}")
    if values["run.reps"] < 2:
        violations.append(f"run.reps must be at least 2, got {values['run.reps']}")
    if values["kernels.window_radius"] > n:
        violations.append(f"kernels.window_radius={values['kernels.window_radius']} exceeds the horizon {n}")
    if any(t < 1 or t > n for t in values["kernels.window_times"]):
        violations.append(f"kernels.window_times must lie in 1..{n}, got {list(values['kernels.window_times'])}")
    horizons = values["sweep.horizons"]
    if not horizons or any(b <= a for a, b in zip(horizons, horizons[1:])) or horizons[0] < 1:
        violations.append(f"sweep.horizons must be positive and increasing, got {list(horizons)}")
    if values["skeleton.n0"] < 16:
        violations.append(f"skeleton.n0 must be at least 16, got {values['skeleton.n0']}")
    if values["stretches.ell_max"] < 2:
        violations.append(f"stretches.ell_max must be at least 2, got {values['stretches.ell_max']}")
    if not 0 <= values["fractional.gamma"] <= 1:
        violations.append(f"fractional.gamma must lie in [0, 1], got {values['fractional.gamma']}")
    if any(m < 1 for m in values["volume.m_list"]):
        violations.append(f"volume.m_list must hold positive multiples, got {list(values['volume.m_list'])}")

    # the largest field any experiment samples under the shared keys
    longest = max([n, *horizons])
    radius = math.isqrt(n) + 1
    truncation = values["engine.truncation"]
    if truncation is None:
        truncation = default_cone_truncation(longest, radius)
    estimate = field_memory_estimate(longest, radius, 0, truncation)
    cap = values["engine.memory_cap_mb"] * 1024 ** 2
    if estimate > cap:
        violations.append(
            f"field memory of {estimate / 1024 ** 2:.1f} MiB at N={longest} exceeds engine.memory_cap_mb="
            f"{values['engine.memory_cap_mb']}"
        )
    return violations


def resolve(raw: Mapping[str, str]) -> Tuple[ExperimentConfig, List[str]]:
    """Parse raw values against :data:`SCHEMA` and run the cross-field checks.

    Returns:
        The configuration (defaults where a value is missing or invalid) and every violation found.

    """
    violations = [f"unknown key {key}" for key in raw if key not in SCHEMA]
    values: Dict[str, Any] = {}
    for key, spec in SCHEMA.items():
        values[key] = spec.default
        if key in raw:
            try:
                values[key] = spec.parse(raw[key])
            except ValueError:
                violations.append(f"invalid value for {key}: {raw[key]!r} ({spec.help})")
    if not violations:
        violations.extend(_cross_field_violations(values))
    return ExperimentConfig(values), violations


def validate_text(text: str) -> Tuple[ExperimentConfig, List[str]]:
    """Return the resolved configuration of a text and every violation, without raising."""
    raw, violations = parse_lines(text)
    config, schema_violations = resolve(raw)
    return config, violations + schema_violations


def load_config(path: Path) -> ExperimentConfig:
    """Read and validate a configuration file.

    Raises:
        ConfigurationException: Listing every violation, the first one in the message.

    """
    config, violations = validate_text(Path(path).read_text(encoding="utf-8"))
    if violations:
        raise ConfigurationException(f"Invalid configuration {path}: {violations[0]}", violations)
    logger.debug(f"Loaded configuration {path} with digest {config.digest}")
    return config
