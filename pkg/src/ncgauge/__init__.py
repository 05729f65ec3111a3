"""Exact quantum and braided group gauge theory on finite-dimensional examples."""
from .catalog import catalog, load
from .field import Cyc, zeta
from .suites import SUITES, run_suite

__version__ = "0.1.0"

__all__ = ["Cyc", "zeta", "catalog", "load", "run_suite", "SUITES", "__version__"]
