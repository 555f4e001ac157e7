"""
Approximate AB-join of a query series against a learned dictionary.
"""

from typing import Optional

import numpy as np

from ..config.logging import get_logger
from ..config.models import JoinSettings
from ..dictionary.models import Dictionary
from ..errors import EmptyDictionary, SegmentTooShort, SeriesTooShort, WindowMismatch
from ..profiles.joins import join_arrays
from ..profiles.models import NO_NEIGHBOR, JoinKind, MatrixProfile
from ..series.core import SeriesLike, TimeSeries, as_series, compute_stats


logger = get_logger(__name__)


def _check_dictionary(dictionary: Dictionary, m: int) -> None:
    if m != dictionary.m:
        raise WindowMismatch(
            f"Window length {m} differs from the dictionary's m = {dictionary.m}",
            details={"m": m, "dictionary_m": dictionary.m}
        )
    if not dictionary.segments:
        raise EmptyDictionary("Dictionary has no segments")
    for position, segment in enumerate(dictionary.segments):
        if len(segment) < m:
            raise SegmentTooShort(
                f"Segment {position} has {len(segment)} samples, fewer than m = {m}",
                details={"segment": position, "start": segment.start, "length": len(segment), "m": m}
            )


def join_dictionary(
    series_a: SeriesLike,
    dictionary: Dictionary,
    m: Optional[int] = None,
    settings: Optional[JoinSettings] = None
) -> MatrixProfile:
    """
    Nearest dictionary window for every window of T_A.

    Each segment is AB-joined on its own and the results are merged by
    elementwise minimum; ties keep the earlier segment, so the lowest source
    index wins. Indices are in source (T_B) coordinates.

    Args:
        series_a: Query series T_A
        dictionary: Dictionary learned from T_B
        m: Window length; must equal the dictionary's (defaults to it)
        settings: Join execution settings (system defaults when omitted)

    Returns:
        MatrixProfile of kind dictionary-join

    Raises:
        WindowMismatch, EmptyDictionary, SegmentTooShort, SeriesTooShort
    """
    series_a = as_series(series_a)
    m = dictionary.m if m is None else int(m)
    _check_dictionary(dictionary, m)
    if series_a.n < m:
        raise SeriesTooShort(
            f"T_A has {series_a.n} samples, fewer than the window length {m}",
            details={"n": series_a.n, "m": m}
        )

    with logger.timed_operation(
        "join_dictionary",
        n_a=series_a.n,
        m=m,
        segments=len(dictionary.segments),
        stored_samples=dictionary.stored_samples
    ):
        stats_a = compute_stats(series_a, m)
        threshold = dictionary.window_threshold
        values = np.full(len(stats_a), np.inf)
        indices = np.full(len(stats_a), NO_NEIGHBOR, dtype=np.int64)

        for segment in dictionary.segments:
            piece = TimeSeries(segment.values)
            local_values, local_indices = join_arrays(
                series_a, stats_a, piece, compute_stats(piece, m, threshold), -1, settings
            )
            better = local_values < values
            values[better] = local_values[better]
            indices[better] = local_indices[better] + segment.start

    values.setflags(write=False)
    indices.setflags(write=False)
    return MatrixProfile(values=values, indices=indices, kind=JoinKind.DICTIONARY, m=m)
