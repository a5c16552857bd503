import click

import hopfmorita
from hopfmorita._internal import logging as run_log
from . import fixtures
from . import run
from .util import click_group

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])


@click.version_option(hopfmorita.__version__, "-v", "--version")
@click_group(context_settings=CONTEXT_SETTINGS)
def hmorita():
    """
    hmorita is the main entry point for the hopfmorita commandline interface. It
    runs problem files: declarative descriptions of an algebra, an action of a
    Lie algebra or a finite group on it, and a list of tasks to verify, and
    prints one json report per run.
    """
    run_log.enable()


# Add subcommands
run.add_command(hmorita)
fixtures.add_command(hmorita)


if __name__ == "__main__":
    hmorita()
