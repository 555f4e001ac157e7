"""
Scoring helpers: ROC AUC of anomaly scores, per-window labels from anomalous
regions, and summaries of approximation error.
"""

from dataclasses import asdict, dataclass
from typing import Iterable, Tuple, Union

import numpy as np
from scipy.stats import rankdata

from ..dictionary.segments import merge_segments
from ..errors import DegenerateLabels, LengthMismatch
from ..profiles.models import MatrixProfile


ProfileLike = Union[MatrixProfile, np.ndarray, Iterable[float]]


def _values(profile: ProfileLike) -> np.ndarray:
    if isinstance(profile, MatrixProfile):
        return profile.values
    return np.asarray(profile, dtype=np.float64).ravel()


def auc_score(scores: Iterable[float], labels: Iterable[bool]) -> float:
    """
    Mann-Whitney ROC AUC; tied scores count one half.

    Raises:
        LengthMismatch: scores and labels differ in length
        DegenerateLabels: labels are all positive or all negative
    """
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = np.asarray(labels, dtype=bool).ravel()
    if scores.shape != labels.shape:
        raise LengthMismatch(
            "Scores and labels must have equal length",
            details={"scores": int(scores.shape[0]), "labels": int(labels.shape[0])}
        )

    positives = int(labels.sum())
    negatives = int(labels.shape[0]) - positives
    if positives == 0 or negatives == 0:
        raise DegenerateLabels(
            "AUC needs at least one positive and one negative label",
            details={"positives": positives, "negatives": negatives}
        )

    ranks = rankdata(scores)
    u = ranks[labels].sum() - positives * (positives + 1) / 2.0
    return float(u / (positives * negatives))


def window_labels(regions: Iterable[Tuple[int, int]], n: int, m: int) -> np.ndarray:
    """
    Per-window ground truth for a series of n samples.

    Window i is positive when at least half of [i, i + m) lies inside the
    (merged) anomalous regions.
    """
    covered = np.zeros(n + 1, dtype=np.int64)
    for start, stop in merge_segments(regions):
        start = max(0, start)
        stop = min(n, stop)
        if stop > start:
            covered[start + 1:stop + 1] += 1
    prefix = np.cumsum(covered)
    windows = n - m + 1
    if windows <= 0:
        return np.zeros(0, dtype=bool)
    overlap = prefix[m:m + windows] - prefix[:windows]
    return 2 * overlap >= m


@dataclass(frozen=True)
class ErrorSummary:
    """Statistics of approximate - exact profile values."""

    mean: float
    std: float
    max: float
    min: float

    def to_dict(self) -> dict:
        return asdict(self)


def summarize_errors(approximate: ProfileLike, exact: ProfileLike) -> ErrorSummary:
    """
    Summarize the error vector of an approximate join against the exact one.

    Raises:
        LengthMismatch: profiles differ in length
    """
    approximate = _values(approximate)
    exact = _values(exact)
    if approximate.shape != exact.shape:
        raise LengthMismatch(
            "Profiles must have equal length",
            details={"approximate": int(approximate.shape[0]), "exact": int(exact.shape[0])}
        )
    errors = approximate - exact
    return ErrorSummary(
        mean=float(errors.mean()),
        std=float(errors.std()),
        max=float(errors.max()),
        min=float(errors.min())
    )
