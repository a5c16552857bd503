"""
hopfmorita: exact Hopf-algebra-covariant Morita theory for small *-algebras.
"""
try:
    from ._version import __version__  # noqa: F401
except ImportError:
    __version__ = "0.0.0+unknown"
