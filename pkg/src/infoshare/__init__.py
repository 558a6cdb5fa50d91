"""Exact mechanisms for information exchange among envious players, plus brute-force property checks."""

__version__ = "0.1.0"
