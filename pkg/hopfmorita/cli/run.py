"""
Runs a problem file and emits its json report.
"""
from pathlib import Path
import sys

import click
from rich.table import Table

from hopfmorita import config
from hopfmorita.errors import ProblemError
from hopfmorita.problem import build_context, load_problem
from hopfmorita.tasks import FAIL, PASS, SKIP, RunReport
from hopfmorita.tasks import run as run_tasks
from hopfmorita.tasks import verify_oracle

from .util import console, err_console

_STYLES = {PASS: "green", FAIL: "red", SKIP: "yellow"}


def resolve_input(input: str) -> Path:
    """A path, or the name of a shipped fixture with or without `.json`."""
    path = Path(input)
    if path.exists():
        return path
    name = input if input.endswith(".json") else f"{input}.json"
    shipped = config.FIXTURES_DIR / name
    if shipped.exists():
        return shipped
    return path


def summary_table(report: RunReport) -> Table:
    table = Table(title=f"hmorita {report.mode}: {report.verdict}", show_lines=True)
    table.add_column("#")
    table.add_column("Task")
    table.add_column("Verdict")
    table.add_column("Scope")
    table.add_column("Failed identities")
    for result in report.tasks:
        style = _STYLES.get(result.verdict, "red")
        scope = result.report.scope.describe() if result.report else ""
        if result.error is not None:
            failed = result.error
        else:
            failed = ", ".join(sorted(set(result.report.failed_identities())))
        table.add_row(str(result.index), result.task, f"[{style}]{result.verdict}[/]", scope, failed)
    return table


@click.command()
@click.option("--input", "-i", "input", required=True, help="Problem file, or the name of a shipped fixture.")
@click.option("--output", "-o", default=None, help="Report file. Defaults to standard output.")
@click.option("--truncation", "-n", type=int, default=None, help="Truncation order N of U(g), overrides the file.")
@click.option("--window", "-k", type=int, default=None, help="Mode window K of the Laurent model, overrides the file.")
@click.option("--parallel", is_flag=True, default=False, help="Run independent tasks in parallel.")
@click.option("--oracle", is_flag=True, default=False, help="Check the tasks against their brute-force oracles.")
def run(input, output, truncation, window, parallel, oracle):
    """
    Runs the tasks of a problem file in order and writes the json report. The
    exit status is 0 when every task passes, 1 when a task fails, 2 for a bad
    problem file and 3 when an internal consistency check fails.
    """
    path = resolve_input(input)
    if not path.exists():
        err_console.print(f"[red]No problem file {input}[/]")
        sys.exit(2)
    try:
        ctx = build_context(load_problem(path), truncation=truncation, window=window)
        report = verify_oracle(ctx, parallel) if oracle else run_tasks(ctx, parallel)
    except ProblemError as e:
        err_console.print(f"[red]Invalid problem file {path}[/]: {e}")
        sys.exit(2)

    text = report.to_json()
    if output is None:
        click.echo(text)
        err_console.print(summary_table(report))
    else:
        Path(output).write_text(text + "\n")
        console.print(summary_table(report))
        console.print(f"Report written to [green]{output}[/].")
    sys.exit(report.exit_code())


def add_command(cli_group):
    cli_group.add_command(run)
