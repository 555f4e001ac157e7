"""
Greedy dictionary learning over a source series, plus the random-selection
baseline used to judge dictionary quality.

Each iteration picks the window whose self-join distance is least explained
by the dictionary so far (P_B - S), masks its trivial-match zone, stores it
with its context and folds its distance profile into S.
"""

from dataclasses import dataclass, replace
from itertools import count
from typing import Iterator, List, Optional

import numpy as np

from ..config.logging import get_logger
from ..config.models import STOP_ERROR_TARGET, JoinSettings, LearnConfig
from ..errors import IterationCapExceeded, NoProgress, SeriesTooShort, SourceMismatch
from ..profiles.distance import distance_profile_mass
from ..profiles.joins import join_arrays, self_join
from ..series.core import SeriesLike, SubseqStats, TimeSeries, as_series, compute_stats, constancy_threshold
from .models import STOP_BUDGET, STOP_EXHAUSTED, Dictionary
from .models import STOP_ERROR_TARGET as REASON_ERROR_TARGET
from .segments import Interval, build_segments, context_interval, covered_samples, merge_segments


logger = get_logger(__name__)


@dataclass
class LearnStep:
    """State right after one core (with context) was added."""

    iteration: int
    core_start: int
    core_starts: List[int]
    intervals: List[Interval]
    stored_samples: int
    merged_profile: np.ndarray
    coverage_error: Optional[float] = None


class DictionaryLearner:
    """
    Greedy dictionary learner.

    The processed profile P_B - S highlights windows that are typical of
    T_B (low self-join distance) yet far from everything already stored.
    """

    def __init__(self, config: LearnConfig, settings: Optional[JoinSettings] = None):
        """
        Initialize the learner.

        Args:
            config: Learning parameters and stop rule
            settings: Join execution settings (system defaults when omitted)
        """
        self.config = config
        self.settings = settings

    def _base_profile(self, series: TimeSeries) -> np.ndarray:
        return np.array(self_join(series, self.config.m, self.settings).values)

    def _select_core(self, processed: np.ndarray, masked: np.ndarray) -> int:
        return int(np.argmin(processed))

    def iterate(self, series: SeriesLike, track_coverage: bool = False) -> Iterator[LearnStep]:
        """
        Run learning iterations until every candidate start is masked.

        Args:
            series: Source series T_B with n >= 2m
            track_coverage: Maintain the exact nearest-neighbor distance of every
                T_B window into the stored intervals (needed by the error rule)

        Yields:
            LearnStep after each added core
        """
        series = as_series(series)
        m = self.config.m
        n = series.n
        if n < 2 * m:
            raise SeriesTooShort(
                f"Dictionary learning needs at least 2m = {2 * m} samples, got {n}",
                details={"n": n, "m": m}
            )

        stats = compute_stats(series, m)
        profile = self._base_profile(series)
        windows = len(stats)
        radius = m // 2

        merged_profile = np.zeros(windows)
        masked = np.zeros(windows, dtype=bool)
        coverage = np.full(windows, np.inf) if track_coverage else None
        cores: List[int] = []
        raw_intervals: List[Interval] = []

        for iteration in count(1):
            processed = profile - merged_profile
            processed[masked] = np.inf
            if masked.all():
                return

            core = self._select_core(processed, masked)
            cores.append(core)
            masked[max(0, core - radius):min(windows, core + radius + 1)] = True

            interval = context_interval(core, m, self.config.k, n)
            raw_intervals.append(interval)
            merged = merge_segments(raw_intervals)

            coverage_error = None
            if coverage is not None:
                np.minimum(coverage, self._interval_coverage(series, stats, interval), out=coverage)
                coverage_error = float(coverage.max())

            yield LearnStep(
                iteration=iteration,
                core_start=core,
                core_starts=list(cores),
                intervals=merged,
                stored_samples=covered_samples(merged),
                merged_profile=merged_profile.copy(),
                coverage_error=coverage_error
            )

            query = series.values[core:core + m]
            new_profile = distance_profile_mass(series, query, stats, query_origin=core).values
            if iteration == 1:
                merged_profile = np.array(new_profile)
            else:
                np.minimum(merged_profile, new_profile, out=merged_profile)

    def _interval_coverage(
        self,
        series: TimeSeries,
        stats: SubseqStats,
        interval: Interval
    ) -> np.ndarray:
        start, stop = interval
        piece = series.slice(start, stop)
        values, _ = join_arrays(
            series, stats, piece, compute_stats(piece, self.config.m, stats.threshold), -1, self.settings
        )
        return values

    def learn(self, series: SeriesLike) -> Dictionary:
        """
        Learn a dictionary from T_B under the configured stop rule.

        The returned dictionary carries its exact e_max. When every start is
        masked before the rule fires, the dictionary built so far is returned
        with ``stop_reason == "exhausted"``.

        Raises:
            SeriesTooShort: n < 2m
            IterationCapExceeded: max_iterations reached first
        """
        series = as_series(series)
        config = self.config
        budget = config.budget_for(series.n)
        track = config.stop_rule == STOP_ERROR_TARGET

        with logger.timed_operation("learn_dictionary", n=series.n, m=config.m, stop_rule=config.stop_rule) as outcome:
            last: Optional[LearnStep] = None
            stop_reason = STOP_EXHAUSTED
            for step in self.iterate(series, track_coverage=track):
                last = step
                if budget is not None and step.stored_samples >= budget - 1e-9:
                    stop_reason = STOP_BUDGET
                    break
                if track and step.coverage_error <= config.error_target:
                    stop_reason = REASON_ERROR_TARGET
                    break
                if step.iteration >= config.max_iterations:
                    raise IterationCapExceeded(
                        f"Stop rule not met after {step.iteration} iterations",
                        details={
                            "iterations": step.iteration,
                            "stored_samples": step.stored_samples,
                            "coverage_error": step.coverage_error
                        }
                    )

            dictionary = Dictionary(
                segments=build_segments(series, last.intervals),
                m=config.m,
                k=config.k,
                source_length=series.n,
                core_starts=tuple(last.core_starts),
                stop_reason=stop_reason,
                iterations=last.iteration,
                constant_threshold=constancy_threshold(series.values)
            )
            dictionary = dictionary.with_e_max(compute_e_max(dictionary, series, self.settings))
            outcome.update(
                iterations=dictionary.iterations,
                segments=len(dictionary.segments),
                stored_samples=dictionary.stored_samples,
                space_saving=round(dictionary.space_saving, 6),
                e_max=dictionary.e_max,
                stop_reason=stop_reason
            )

        if stop_reason == STOP_EXHAUSTED:
            logger.warning(
                "Every candidate start masked before the stop rule fired",
                iterations=dictionary.iterations,
                space_saving=dictionary.space_saving
            )
        return dictionary


class RandomBaselineLearner(DictionaryLearner):
    """
    Picks each core uniformly among unmasked starts; exclusion, context and
    merging are the same as the greedy learner.
    """

    def __init__(
        self,
        config: LearnConfig,
        seed: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
        settings: Optional[JoinSettings] = None
    ):
        super().__init__(config, settings)
        self.rng = rng if rng is not None else np.random.default_rng(seed)

    def _base_profile(self, series: TimeSeries) -> np.ndarray:
        return np.zeros(series.n - self.config.m + 1)

    def _select_core(self, processed: np.ndarray, masked: np.ndarray) -> int:
        return int(self.rng.choice(np.flatnonzero(~masked)))


def compute_e_max(
    dictionary: Dictionary,
    series: SeriesLike,
    settings: Optional[JoinSettings] = None
) -> float:
    """
    Largest nearest-neighbor distance from any T_B window into the dictionary's windows.

    Raises:
        SourceMismatch: the dictionary was learned from a series of another length
    """
    from ..join.dict_join import join_dictionary

    series = as_series(series)
    if dictionary.source_length != series.n:
        raise SourceMismatch(
            f"Dictionary source length {dictionary.source_length} differs from series length {series.n}",
            details={"source_length": dictionary.source_length, "n": series.n}
        )
    if dictionary.constant_threshold is None:
        dictionary = replace(dictionary, constant_threshold=constancy_threshold(series.values))
    return float(np.max(join_dictionary(series, dictionary, dictionary.m, settings).values))


def require_stop_rule(dictionary: Dictionary, config: LearnConfig) -> Dictionary:
    """
    Reject an exhausted dictionary that does not satisfy the configured stop rule.

    Raises:
        NoProgress: learning ran out of candidates with the rule unmet
    """
    if not dictionary.exhausted:
        return dictionary

    budget = config.budget_for(dictionary.source_length)
    if budget is not None:
        met = dictionary.stored_samples >= budget - 1e-9
    else:
        met = dictionary.e_max is not None and dictionary.e_max <= config.error_target
    if met:
        return dictionary

    raise NoProgress(
        "Every candidate start was masked before the stop rule fired",
        details={
            "iterations": dictionary.iterations,
            "stored_samples": dictionary.stored_samples,
            "e_max": dictionary.e_max,
            "stop_rule": config.stop_rule
        }
    )


def learn_dictionary(
    series: SeriesLike,
    config: LearnConfig,
    settings: Optional[JoinSettings] = None
) -> Dictionary:
    """Greedy dictionary learning (see DictionaryLearner.learn)."""
    return DictionaryLearner(config, settings).learn(series)


def learn_random_dictionary(
    series: SeriesLike,
    config: LearnConfig,
    seed: Optional[int] = None,
    settings: Optional[JoinSettings] = None
) -> Dictionary:
    """Random-selection baseline with the same stop rules as the greedy learner."""
    return RandomBaselineLearner(config, seed=seed, settings=settings).learn(series)
