"""
Interval handling for dictionary storage: context windows and overlap merging.
"""

import math
from typing import Iterable, List, Sequence, Tuple

from ..series.core import TimeSeries
from .models import Segment


Interval = Tuple[int, int]


def context_interval(core_start: int, m: int, k: float, n: int) -> Interval:
    """
    [start, stop) of a core plus its context, clipped to [0, n).

    The k*m context samples are split floor(k*m/2) before the core and the
    remainder after it.
    """
    total = int(math.floor(k * m + 1e-9))
    before = total // 2
    after = total - before
    return max(0, core_start - before), min(n, core_start + m + after)


def merge_segments(intervals: Iterable[Interval]) -> List[Interval]:
    """
    Union of half-open intervals as a sorted, disjoint list.

    Overlapping and touching intervals merge.
    """
    merged: List[List[int]] = []
    for start, stop in sorted((int(s), int(e)) for s, e in intervals):
        if stop <= start:
            continue
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], stop)
        else:
            merged.append([start, stop])
    return [(start, stop) for start, stop in merged]


def covered_samples(intervals: Sequence[Interval]) -> int:
    """Measure of a disjoint interval list."""
    return sum(stop - start for start, stop in intervals)


def build_segments(series: TimeSeries, intervals: Sequence[Interval]) -> Tuple[Segment, ...]:
    """Copy each merged interval of the series verbatim into a Segment."""
    return tuple(
        Segment(start=start, values=series.values[start:stop])
        for start, stop in merge_segments(intervals)
    )
