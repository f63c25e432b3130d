import sys
from pathlib import Path

import click
from polymer_lab.experiments import validate_text
from polymer_lab.static import EXIT_INVALID_CONFIG

from .options import experiment_options


@click.command()
@experiment_options(include_run_options=False)
def validate(config_path: str) -> None:
    """Check schema and cross-field constraints of a configuration file without running anything."""
    path = Path(config_path)
    config, violations = validate_text(path.read_text(encoding="utf-8"))

    if violations:
        click.echo(click.style(f"Configuration {path} has {len(violations)} violation(s):", fg="red"), err=True)
        for violation in violations:
            click.echo(click.style(f"  {violation}", fg="red"), err=True)
        sys.exit(EXIT_INVALID_CONFIG)

    click.echo(click.style(f"Configuration {path} is valid (digest {config.digest})", fg="green"))
