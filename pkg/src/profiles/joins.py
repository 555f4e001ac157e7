"""
Exact matrix profiles: self-join with a trivial-match exclusion zone and AB-join.
"""

from typing import Optional

from ..config.logging import get_logger
from ..config.manager import get_system_config
from ..config.models import JoinSettings
from ..errors import SeriesTooShort
from ..series.core import (
    SeriesLike,
    SubseqStats,
    TimeSeries,
    as_series,
    check_window,
    compute_stats
)
from .kernels import apply_thread_count, join_kernel, streaming_terms
from .models import JoinKind, MatrixProfile


logger = get_logger(__name__)


def _settings(settings: Optional[JoinSettings]) -> JoinSettings:
    return settings if settings is not None else get_system_config().join_settings


def join_arrays(
    series_a: TimeSeries,
    stats_a: SubseqStats,
    series_b: TimeSeries,
    stats_b: SubseqStats,
    exclusion: int,
    settings: Optional[JoinSettings] = None
):
    """
    Run the exact join kernel on prepared series and statistics.

    Returns:
        (values, indices) arrays over the windows of series_a
    """
    settings = _settings(settings)
    apply_thread_count(settings.threads)
    m = stats_a.m
    df_a, dg_a = streaming_terms(series_a.values, stats_a.means, m)
    if series_b is series_a:
        df_b, dg_b = df_a, dg_a
    else:
        df_b, dg_b = streaming_terms(series_b.values, stats_b.means, m)

    return join_kernel(
        series_a.values, stats_a.means, stats_a.inv_norms, stats_a.constant_mask, df_a, dg_a,
        series_b.values, stats_b.means, stats_b.inv_norms, stats_b.constant_mask, df_b, dg_b,
        m, exclusion, settings.row_block
    )


def self_join(
    series: SeriesLike,
    m: int,
    settings: Optional[JoinSettings] = None
) -> MatrixProfile:
    """
    Exact self-join matrix profile.

    Candidates within floor(m/2) of the query start are excluded; ties go to
    the lowest start index.

    Args:
        series: Series of n >= 2m samples
        m: Window length
        settings: Join execution settings (system defaults when omitted)

    Returns:
        MatrixProfile of kind self-join
    """
    series = as_series(series)
    m = int(m)
    check_window(series.n, m)
    if series.n < 2 * m:
        raise SeriesTooShort(
            f"Self-join needs at least 2m = {2 * m} samples, got {series.n}",
            details={"n": series.n, "m": m}
        )

    with logger.timed_operation("self_join", n=series.n, m=m):
        stats = compute_stats(series, m)
        values, indices = join_arrays(series, stats, series, stats, m // 2, settings)

    values.setflags(write=False)
    indices.setflags(write=False)
    return MatrixProfile(values=values, indices=indices, kind=JoinKind.SELF, m=m)


def ab_join(
    series_a: SeriesLike,
    series_b: SeriesLike,
    m: int,
    settings: Optional[JoinSettings] = None
) -> MatrixProfile:
    """
    Exact AB-join: nearest window of T_B for every window of T_A, no exclusion zone.

    Args:
        series_a: Query series T_A
        series_b: Target series T_B
        m: Window length
        settings: Join execution settings (system defaults when omitted)

    Returns:
        MatrixProfile of kind ab-join with indices into T_B
    """
    series_a = as_series(series_a)
    series_b = as_series(series_b)
    m = int(m)
    for name, series in (("T_A", series_a), ("T_B", series_b)):
        if series.n < m:
            raise SeriesTooShort(
                f"{name} has {series.n} samples, fewer than the window length {m}",
                details={"series": name, "n": series.n, "m": m}
            )

    with logger.timed_operation("ab_join", n_a=series_a.n, n_b=series_b.n, m=m):
        stats_a = compute_stats(series_a, m)
        stats_b = compute_stats(series_b, m)
        values, indices = join_arrays(series_a, stats_a, series_b, stats_b, -1, settings)

    values.setflags(write=False)
    indices.setflags(write=False)
    return MatrixProfile(values=values, indices=indices, kind=JoinKind.AB, m=m)
