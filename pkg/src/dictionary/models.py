"""
Dictionary data model: verbatim segments of a source series plus the
parameters and error bound they were learned with.
"""

import math
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..errors import SchemaError
from ..series.core import constancy_threshold, znorm_distance


STOP_BUDGET = "budget"
STOP_ERROR_TARGET = "error_target"
STOP_EXHAUSTED = "exhausted"


@dataclass(frozen=True, eq=False)
class Segment:
    """A contiguous run of source samples starting at ``start``."""

    start: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start", int(self.start))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def stop(self) -> int:
        """Exclusive end in source coordinates."""
        return self.start + len(self)


@dataclass(frozen=True, eq=False)
class Dictionary:
    """
    Disjoint, start-sorted segments of T_B.

    ``core_starts`` keeps the length-m subsequence picked at each learning
    iteration (pre-merge); ``e_max`` is the certified bound on the nearest-
    neighbor distance from any T_B window into the dictionary's windows.
    ``constant_threshold`` is the constancy threshold of T_B itself; joins
    against the segments use it so every window is classified as in T_B.
    """

    segments: Tuple[Segment, ...]
    m: int
    k: float
    source_length: int
    core_starts: Tuple[int, ...] = ()
    e_max: Optional[float] = None
    stop_reason: Optional[str] = None
    iterations: int = 0
    constant_threshold: Optional[float] = None

    def __post_init__(self):
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        object.__setattr__(self, "core_starts", tuple(int(c) for c in self.core_starts))
        previous_stop = None
        for position, segment in enumerate(segments):
            if len(segment) == 0:
                raise SchemaError("Empty segment", details={"segment": position})
            if segment.start < 0 or segment.stop > self.source_length:
                raise SchemaError(
                    "Segment lies outside the source series",
                    details={"segment": position, "start": segment.start, "stop": segment.stop}
                )
            if previous_stop is not None and segment.start < previous_stop:
                raise SchemaError(
                    "Segments must be disjoint and sorted by start",
                    details={"segment": position, "start": segment.start}
                )
            previous_stop = segment.stop

        self._check_core_starts()
        if self.constant_threshold is not None:
            threshold = float(self.constant_threshold)
            if not math.isfinite(threshold) or threshold <= 0.0:
                raise SchemaError(
                    "Constancy threshold must be a positive finite number",
                    details={"constant_threshold": self.constant_threshold}
                )
            object.__setattr__(self, "constant_threshold", threshold)

    def _check_core_starts(self) -> None:
        radius = self.m // 2
        for core in self.core_starts:
            if core < 0 or core + self.m > self.source_length:
                raise SchemaError(
                    "Core window lies outside the source series",
                    details={"core_start": core, "m": self.m, "source_length": self.source_length}
                )
        ordered = sorted(self.core_starts)
        for earlier, later in zip(ordered, ordered[1:]):
            if later - earlier <= radius:
                raise SchemaError(
                    "Core starts must differ by more than m // 2",
                    details={"core_starts": [earlier, later], "m": self.m}
                )

    @property
    def window_threshold(self) -> float:
        """Constancy threshold for windows of the segments.

        Falls back to the scale of the stored samples when the source
        threshold is unknown (hand-built dictionaries).
        """
        if self.constant_threshold is not None:
            return self.constant_threshold
        if not self.segments:
            return constancy_threshold(np.zeros(0))
        return constancy_threshold(np.concatenate([segment.values for segment in self.segments]))

    @property
    def stored_samples(self) -> int:
        """Total samples held by all segments."""
        return sum(len(segment) for segment in self.segments)

    @property
    def space_saving(self) -> float:
        """1 - stored / source samples."""
        if self.source_length <= 0:
            return 0.0
        return 1.0 - self.stored_samples / self.source_length

    @property
    def intervals(self) -> List[Tuple[int, int]]:
        """[start, stop) of every segment in source coordinates."""
        return [(segment.start, segment.stop) for segment in self.segments]

    @property
    def exhausted(self) -> bool:
        """True when learning ran out of unmasked candidates."""
        return self.stop_reason == STOP_EXHAUSTED

    def windows(self) -> Iterator[Tuple[int, np.ndarray]]:
        """Yield (source start, values) of every length-m window of every segment."""
        m = self.m
        for segment in self.segments:
            for offset in range(len(segment) - m + 1):
                yield segment.start + offset, segment.values[offset:offset + m]

    def core_window(self, core_start: int) -> np.ndarray:
        """Values of the length-m core subsequence starting at ``core_start``."""
        for segment in self.segments:
            if segment.start <= core_start and core_start + self.m <= segment.stop:
                offset = core_start - segment.start
                return segment.values[offset:offset + self.m]
        raise KeyError(core_start)

    def with_e_max(self, e_max: Optional[float]) -> "Dictionary":
        """Copy with a different certified bound."""
        return replace(self, e_max=e_max)

    def summary(self) -> List[dict]:
        """
        One row per core: where it sits and how far it is from the closest other core.

        Cores whose window is not stored verbatim (edited dictionaries) are skipped.
        """
        cores = []
        for core_start in self.core_starts:
            try:
                cores.append((core_start, self.core_window(core_start)))
            except KeyError:
                continue

        rows = []
        for rank, (core_start, window) in enumerate(cores):
            nearest = min(
                (znorm_distance(window, other) for start, other in cores if start != core_start),
                default=float("nan")
            )
            segment = next(
                s for s in self.segments if s.start <= core_start < s.stop
            )
            rows.append({
                "iteration": rank + 1,
                "core_start": core_start,
                "segment_start": segment.start,
                "segment_stop": segment.stop,
                "nearest_core_distance": nearest
            })
        return rows
