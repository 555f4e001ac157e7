"""
Seeded synthetic data, the benchmark harness and the dictionary-quality experiment.
"""

from .synthetic import (
    GENERATORS,
    TEMPLATE_NAMES,
    LabeledSeries,
    class_insertion_series,
    ecg_beat,
    ecg_like,
    generate,
    make_rng,
    planted_anomaly_ecg,
    random_walk,
    regime_series,
    templates,
    white_noise
)
from .bench import BENCH_COLUMNS, run_bench
from .quality import QualityResult, compare_with_random_baseline, space_saving_at_full_coverage

__all__ = [
    "GENERATORS",
    "TEMPLATE_NAMES",
    "LabeledSeries",
    "class_insertion_series",
    "ecg_beat",
    "ecg_like",
    "generate",
    "make_rng",
    "planted_anomaly_ecg",
    "random_walk",
    "regime_series",
    "templates",
    "white_noise",
    "BENCH_COLUMNS",
    "run_bench",
    "QualityResult",
    "compare_with_random_baseline",
    "space_saving_at_full_coverage"
]
