"""
Distance profiles: FFT-accelerated MASS and a brute-force oracle.
"""

import math
from typing import Optional

import numpy as np
from scipy import fft

from ..errors import LengthMismatch
from ..series.core import (
    SeriesLike,
    SubseqStats,
    as_series,
    constancy_threshold,
    znorm_distance
)
from .models import DistanceProfile


def sliding_dot_product(query: np.ndarray, values: np.ndarray) -> np.ndarray:
    """
    Dot product of ``query`` with every window of ``values``.

    Uses a real FFT of length next_pow2(n); output index i is the product
    with values[i:i+m].
    """
    query = np.asarray(query, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0]
    m = query.shape[0]
    size = 1 << max(n - 1, 1).bit_length()

    transformed = fft.rfft(query[::-1], size) * fft.rfft(values, size)
    return fft.irfft(transformed, size)[m - 1:n]


def _check_query(series_n: int, query: np.ndarray, stats: SubseqStats) -> None:
    m = stats.m
    if query.shape[0] != m:
        raise LengthMismatch(
            f"Query length {query.shape[0]} differs from window length {m}",
            details={"query_length": int(query.shape[0]), "m": m}
        )
    if len(stats) != series_n - m + 1:
        raise LengthMismatch(
            "Window statistics were computed for a different series",
            details={"stats_length": len(stats), "expected": series_n - m + 1}
        )


def distance_profile_naive(
    series: SeriesLike,
    query: np.ndarray,
    stats: SubseqStats,
    query_origin: Optional[int] = None
) -> DistanceProfile:
    """Per-window znorm_distance evaluation; O(n m)."""
    series = as_series(series)
    query = np.asarray(query, dtype=np.float64).ravel()
    _check_query(series.n, query, stats)

    m = stats.m
    values = np.array([
        znorm_distance(query, series.values[i:i + m])
        for i in range(series.n - m + 1)
    ])
    values.setflags(write=False)
    return DistanceProfile(values=values, query_origin=query_origin)


def distance_profile_mass(
    series: SeriesLike,
    query: np.ndarray,
    stats: SubseqStats,
    query_origin: Optional[int] = None
) -> DistanceProfile:
    """
    Distance profile via FFT sliding dot products; O(n log n).

    The query is z-normalized before the transform, which removes the
    window-mean term from the correlation, and the series is centered on
    its global mean to keep the products well scaled.
    """
    series = as_series(series)
    query = np.asarray(query, dtype=np.float64).ravel()
    _check_query(series.n, query, stats)

    m = stats.m
    sqrt_2m = math.sqrt(2.0 * m)
    max_distance = 2.0 * math.sqrt(m)

    q_std = float(query.std())
    if q_std < constancy_threshold(query):
        values = np.where(stats.constant_mask, 0.0, sqrt_2m)
    else:
        z_query = (query - query.mean()) / q_std
        centered = series.values - series.values.mean()
        dots = sliding_dot_product(z_query, centered)
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = dots / (m * stats.stds)
        rho = np.clip(rho, -1.0, 1.0)
        values = np.sqrt(np.maximum(2.0 * m * (1.0 - rho), 0.0))
        values[stats.constant_mask] = sqrt_2m
        if query_origin is not None and np.array_equal(
            query, series.values[query_origin:query_origin + m]
        ):
            values[query_origin] = 0.0

    values = np.clip(values, 0.0, max_distance)
    values.setflags(write=False)
    return DistanceProfile(values=values, query_origin=query_origin)
