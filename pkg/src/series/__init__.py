"""
Series core: container, rolling statistics and the z-normalized distance.
"""

from .core import (
    TimeSeries,
    SubseqStats,
    as_series,
    check_window,
    compute_stats,
    constancy_threshold,
    correlation_to_distance,
    znorm_distance
)

__all__ = [
    "TimeSeries",
    "SubseqStats",
    "as_series",
    "check_window",
    "compute_stats",
    "constancy_threshold",
    "correlation_to_distance",
    "znorm_distance"
]
