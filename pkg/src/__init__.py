"""Exact and dictionary-approximated matrix profiles for time series."""

__version__ = "0.1.0"
