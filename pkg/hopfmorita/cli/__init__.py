# flake8: noqa
"""
The command line interface of hopfmorita. Installing the package gives a command
line tool called `hmorita` that runs problem files and lists the problem files
shipped with the package.
"""

from .cli import hmorita
