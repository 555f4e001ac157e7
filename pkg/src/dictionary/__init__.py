"""
Dictionary learning: compact verbatim segments of a source series with a certified error bound.
"""

from .models import STOP_BUDGET, STOP_ERROR_TARGET, STOP_EXHAUSTED, Dictionary, Segment
from .segments import Interval, build_segments, context_interval, covered_samples, merge_segments
from .learner import (
    DictionaryLearner,
    LearnStep,
    RandomBaselineLearner,
    compute_e_max,
    learn_dictionary,
    learn_random_dictionary,
    require_stop_rule
)

__all__ = [
    "STOP_BUDGET",
    "STOP_ERROR_TARGET",
    "STOP_EXHAUSTED",
    "Dictionary",
    "Segment",
    "Interval",
    "build_segments",
    "context_interval",
    "covered_samples",
    "merge_segments",
    "DictionaryLearner",
    "LearnStep",
    "RandomBaselineLearner",
    "compute_e_max",
    "learn_dictionary",
    "learn_random_dictionary",
    "require_stop_rule"
]
