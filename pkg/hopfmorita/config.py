"""
Overall configurations and constants for hopfmorita.
"""
import os
from pathlib import Path

import pydantic.version

# Cache directory for local state: run logs, etc.
# To change the cache directory, set the environment variable HOPFMORITA_CACHE_DIR
# before importing hopfmorita. The directory is only created when something needs
# to be written into it, see `hopfmorita.util.create_cached_dir_if_needed()`.
CACHE_DIR = Path(
    os.environ.get("HOPFMORITA_CACHE_DIR", Path.home() / ".cache" / "hopfmorita")
)
LOGS_DIR = CACHE_DIR / "logs"

# Global truncation order N of the enveloping algebra. Every identity that involves
# U(g) is verified on PBW monomials of degree <= N and reported as such.
DEFAULT_TRUNCATION = int(os.environ.get("HOPFMORITA_TRUNCATION", "4"))

# Mode window K for the Laurent model: windowed computations use u^k with |k| <= K.
DEFAULT_WINDOW = int(os.environ.get("HOPFMORITA_WINDOW", "3"))

# Problem files shipped with the package.
FIXTURES_DIR = Path(__file__).parent / "fixtures"

# Largest finite set for which the Picard group is enumerated.
PICARD_BOUND = 4

# Versions of the problem file format and of the emitted json report.
PROBLEM_FORMAT_VERSION = 1
REPORT_VERSION = 1

if pydantic.version.VERSION < "2.0.0":
    PYDANTIC_MAJOR_VERSION = 1
else:
    PYDANTIC_MAJOR_VERSION = 2
