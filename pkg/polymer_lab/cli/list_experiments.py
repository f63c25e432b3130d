import click
from polymer_lab.experiments import CATALOG

NAME_WIDTH = max(len(experiment.name) for experiment in CATALOG)


@click.command("list")
def list_experiments() -> None:
    """List the experiment catalog with the statement each experiment checks (default option)."""
    for experiment in CATALOG:
        click.echo(f"{experiment.name:<{NAME_WIDTH}}  {experiment.description}")
        click.echo(f"{'':<{NAME_WIDTH}}  checks: {experiment.statement}")
