"""
Time-series container, rolling window statistics and the z-normalized
Euclidean distance primitive.

Subsequences are addressed by start index; the set of all windows of a
series is never materialized.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import numpy.typing as npt
from numba import njit

from ..errors import LengthMismatch, NonFiniteInput, WindowTooLarge, WindowTooSmall


CONSTANT_RELATIVE_EPS = 1e-8

ArrayLike = npt.ArrayLike


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """An immutable, finite, real-valued sequence."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise NonFiniteInput(
                f"Sample {bad} is not finite",
                details={"index": bad}
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        """Number of samples."""
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.n

    def window(self, start: int, m: int) -> np.ndarray:
        """Read-only view of the length-m window starting at ``start``."""
        return self.values[start:start + m]

    def slice(self, start: int, stop: int) -> "TimeSeries":
        """New series holding samples [start, stop)."""
        return TimeSeries(self.values[start:stop])


SeriesLike = Union[TimeSeries, ArrayLike]


def as_series(values: SeriesLike) -> TimeSeries:
    """Coerce an array-like to a TimeSeries (no copy when already one)."""
    if isinstance(values, TimeSeries):
        return values
    return TimeSeries(np.asarray(values, dtype=np.float64))


def constancy_threshold(values: ArrayLike) -> float:
    """Std threshold below which a window counts as constant (relative to sample scale)."""
    values = np.asarray(values, dtype=np.float64)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return CONSTANT_RELATIVE_EPS * max(1.0, scale)


@dataclass(frozen=True, eq=False)
class SubseqStats:
    """Rolling mean / population std of every length-m window of a series."""

    m: int
    means: np.ndarray
    stds: np.ndarray
    constant_mask: np.ndarray
    threshold: float

    def __len__(self) -> int:
        return int(self.means.shape[0])

    @property
    def inv_norms(self) -> np.ndarray:
        """1 / (sqrt(m) * std) per window, 0 for constant windows."""
        with np.errstate(divide="ignore"):
            inv = 1.0 / (math.sqrt(self.m) * self.stds)
        inv[self.constant_mask] = 0.0
        return inv


# Fraction of the running sum of squares an update may cancel before the
# window is recomputed exactly (a large sample leaving the window).
CANCELLATION_LIMIT = 1e-3


@njit(cache=True)
def _two_pass(values, start, m):
    acc = 0.0
    for t in range(start, start + m):
        acc += values[t]
    mean = acc / m
    acc = 0.0
    for t in range(start, start + m):
        d = values[t] - mean
        acc += d * d
    return mean, acc


@njit(cache=True)
def _rolling_mean_std(values, m, refresh):
    # Sliding Welford update, re-anchored with an exact two-pass
    # recomputation every `refresh` windows and after heavy cancellation.
    l = values.shape[0] - m + 1
    means = np.empty(l)
    m2s = np.empty(l)
    mean = 0.0
    m2 = 0.0
    for i in range(l):
        if i % refresh == 0:
            mean, m2 = _two_pass(values, i, m)
        else:
            x_out = values[i - 1]
            x_in = values[i + m - 1]
            new_mean = mean + (x_in - x_out) / m
            new_m2 = m2 + (x_in - x_out) * (x_in - new_mean + x_out - mean)
            if new_m2 < CANCELLATION_LIMIT * m2:
                mean, m2 = _two_pass(values, i, m)
            else:
                mean, m2 = new_mean, new_m2
        means[i] = mean
        m2s[i] = m2
    return means, m2s


def check_window(n: int, m: int) -> None:
    """Raise the matching error when m is not a usable window for n samples."""
    if m < 2:
        raise WindowTooSmall(f"Window length {m} is below 2", details={"m": m})
    if m > n:
        raise WindowTooLarge(
            f"Window length {m} exceeds series length {n}",
            details={"m": m, "n": n}
        )


def compute_stats(series: SeriesLike, m: int, threshold: Optional[float] = None) -> SubseqStats:
    """
    Compute rolling mean and population std for every window of length m.

    Args:
        series: Series (or array-like) of n finite samples
        m: Window length, 2 <= m <= n
        threshold: Constancy threshold to apply instead of the series' own.
            Pieces of a longer series pass the parent's threshold so a window
            is classified the same way in both.

    Returns:
        SubseqStats with n - m + 1 entries per vector
    """
    series = as_series(series)
    m = int(m)
    check_window(series.n, m)

    means, m2s = _rolling_mean_std(series.values, m, max(m, 16))
    stds = np.sqrt(np.maximum(m2s, 0.0) / m)
    threshold = constancy_threshold(series.values) if threshold is None else float(threshold)
    constant_mask = stds < threshold

    for array in (means, stds, constant_mask):
        array.setflags(write=False)

    return SubseqStats(
        m=m,
        means=means,
        stds=stds,
        constant_mask=constant_mask,
        threshold=threshold
    )


def znorm_distance(a: ArrayLike, b: ArrayLike) -> float:
    """
    Euclidean distance between the z-normalized copies of a and b.

    Constant windows: both constant -> 0, exactly one constant -> sqrt(2m).
    The result is clamped to [0, 2 sqrt(m)].
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape[0] != b.shape[0]:
        raise LengthMismatch(
            f"Subsequence lengths differ: {a.shape[0]} vs {b.shape[0]}",
            details={"len_a": int(a.shape[0]), "len_b": int(b.shape[0])}
        )
    m = a.shape[0]
    if m < 2:
        raise WindowTooSmall(f"Window length {m} is below 2", details={"m": m})

    if np.array_equal(a, b):
        return 0.0

    std_a = float(a.std())
    std_b = float(b.std())
    const_a = std_a < constancy_threshold(a)
    const_b = std_b < constancy_threshold(b)
    return _distance_from_parts(a, b, std_a, std_b, const_a, const_b)


def _distance_from_parts(a, b, std_a, std_b, const_a, const_b) -> float:
    m = a.shape[0]
    if const_a and const_b:
        return 0.0
    if const_a or const_b:
        return math.sqrt(2.0 * m)
    za = (a - a.mean()) / std_a
    zb = (b - b.mean()) / std_b
    rho = float(np.dot(za, zb)) / m
    return correlation_to_distance(rho, m)


def correlation_to_distance(rho: float, m: int) -> float:
    """d = sqrt(2m(1 - rho)), with rho clamped to [-1, 1]."""
    rho = min(1.0, max(-1.0, rho))
    return math.sqrt(max(2.0 * m * (1.0 - rho), 0.0))
