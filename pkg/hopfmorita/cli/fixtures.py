"""
The problem files shipped with hopfmorita.
"""
import json

import click
from rich.table import Table

from hopfmorita import config

from .run import resolve_input
from .util import check, click_group, console


@click_group()
def fixtures():
    """
    Problem files shipped with hopfmorita. Any of them can be run by name, e.g.
    `hmorita run -i circle-lifts`.
    """
    pass


@fixtures.command(name="list")
def list_command():
    """
    Lists the shipped problem files with their algebra and tasks.
    """
    table = Table(title="Fixtures", show_lines=True)
    table.add_column("Name")
    table.add_column("Algebra")
    table.add_column("Tasks")
    for path in sorted(config.FIXTURES_DIR.glob("*.json")):
        data = json.loads(path.read_text())
        table.add_row(
            path.stem,
            data.get("algebra", {}).get("kind", ""),
            ", ".join(t.get("task", "?") for t in data.get("tasks", [])),
        )
    console.print(table)


@fixtures.command()
@click.argument("name")
def show(name):
    """
    Prints a shipped problem file.
    """
    path = resolve_input(name)
    check(path.exists(), f"[red]No fixture named {name}[/]")
    click.echo(path.read_text(), nl=False)


def add_command(cli_group):
    cli_group.add_command(fixtures)
