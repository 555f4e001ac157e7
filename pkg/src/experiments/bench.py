"""
Benchmark harness: dictionary joins at several space savings against the exact AB-join.
"""

import time
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..config.logging import get_logger
from ..config.models import JoinSettings, LearnConfig
from ..dictionary.learner import learn_dictionary
from ..join.dict_join import join_dictionary
from ..join.evaluation import summarize_errors
from ..profiles.joins import ab_join
from ..series.core import SeriesLike, as_series


logger = get_logger(__name__)


BENCH_COLUMNS = [
    "space_saving",
    "e_max",
    "mean_err",
    "max_err",
    "min_err",
    "std_err",
    "learn_seconds",
    "join_seconds",
    "exact_join_seconds",
    "speedup",
    "throughput",
    "dictionary_samples"
]


def _warm_up(m: int, settings: Optional[JoinSettings]) -> None:
    # first call compiles the kernels
    warmup = np.sin(np.arange(4 * m, dtype=np.float64))
    ab_join(warmup, warmup, m, settings)


def run_bench(
    series_a: SeriesLike,
    series_b: SeriesLike,
    m: int,
    space_savings: Iterable[float],
    k: float = 1.5,
    settings: Optional[JoinSettings] = None
) -> pd.DataFrame:
    """
    Learn a dictionary from T_B at each space saving and join T_A against it.

    Every row compares the dictionary join with one exact AB-join timed in
    the same process. ``throughput`` is T_A samples per second of join time.

    Returns:
        DataFrame with BENCH_COLUMNS, one row per space saving
    """
    series_a = as_series(series_a)
    series_b = as_series(series_b)
    _warm_up(m, settings)

    started = time.perf_counter()
    exact = ab_join(series_a, series_b, m, settings)
    exact_seconds = time.perf_counter() - started

    rows = []
    for space_saving in space_savings:
        config = LearnConfig(m=m, k=k, space_saving_target=float(space_saving))

        started = time.perf_counter()
        dictionary = learn_dictionary(series_b, config, settings)
        learn_seconds = time.perf_counter() - started

        started = time.perf_counter()
        approximate = join_dictionary(series_a, dictionary, m, settings)
        join_seconds = time.perf_counter() - started

        errors = summarize_errors(approximate, exact)
        row = {
            "space_saving": dictionary.space_saving,
            "e_max": dictionary.e_max,
            "mean_err": errors.mean,
            "max_err": errors.max,
            "min_err": errors.min,
            "std_err": errors.std,
            "learn_seconds": learn_seconds,
            "join_seconds": join_seconds,
            "exact_join_seconds": exact_seconds,
            "speedup": exact_seconds / join_seconds if join_seconds > 0 else float("inf"),
            "throughput": series_a.n / join_seconds if join_seconds > 0 else float("inf"),
            "dictionary_samples": dictionary.stored_samples
        }
        if row["max_err"] > row["e_max"] + 1e-6:
            logger.error("Join error exceeds the certified bound", **row)
        else:
            logger.info("Bench row complete", **row)
        rows.append(row)

    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
