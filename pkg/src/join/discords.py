"""
Discord discovery on (approximate) matrix profiles with error-bound certification.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..config.logging import get_logger
from ..config.models import JoinSettings
from ..dictionary.models import Dictionary
from ..errors import EmptyProfile
from ..profiles.models import MatrixProfile
from ..series.core import SeriesLike, as_series
from .dict_join import join_dictionary
from .evaluation import auc_score, window_labels


logger = get_logger(__name__)


@dataclass(frozen=True)
class Discord:
    """One reported discord."""

    start: int
    score: float
    certified: bool = False


@dataclass(frozen=True, eq=False)
class AnomalyReport:
    """Per-window anomaly scores plus the ranked discords found in them."""

    scores: MatrixProfile
    discords: Tuple[Discord, ...]
    e_max_used: Optional[float]
    auc: Optional[float] = None

    def to_frame(self) -> pd.DataFrame:
        """Discord table: rank, start, score, certified."""
        return pd.DataFrame(
            [
                {"rank": rank, "start": d.start, "score": d.score, "certified": d.certified}
                for rank, d in enumerate(self.discords, start=1)
            ],
            columns=["rank", "start", "score", "certified"]
        )


def _suppress(available: np.ndarray, index: int, radius: int) -> None:
    available[max(0, index - radius):index + radius + 1] = False


def find_discords(
    profile: MatrixProfile,
    e_max: Optional[float],
    top_k: int = 1
) -> List[Discord]:
    """
    Greedy top-k discords with floor(m/2) non-overlap suppression.

    The rank-1 discord is certified when its lead over the best window
    outside its exclusion zone exceeds e_max; then the exact discord lies
    within floor(m/2) of it. A rank-1 window with no competitor left is
    certified too. Lower ranks are never certified.

    Args:
        profile: Matrix profile used as anomaly score
        e_max: Error bound of the approximation (None disables certification)
        top_k: Number of discords to report

    Raises:
        EmptyProfile: the profile has no windows
    """
    values = profile.values
    if values.shape[0] == 0:
        raise EmptyProfile("Cannot search an empty matrix profile for discords")
    if e_max is not None and e_max < 0:
        raise ValueError("e_max must be non-negative")
    if top_k < 1:
        raise ValueError("top_k must be at least 1")

    radius = profile.m // 2
    available = np.ones(values.shape[0], dtype=bool)
    discords: List[Discord] = []

    for rank in range(top_k):
        if not available.any():
            break
        masked = np.where(available, values, -np.inf)
        index = int(np.argmax(masked))
        _suppress(available, index, radius)

        certified = False
        if rank == 0 and e_max is not None:
            if available.any():
                runner_up = float(np.max(values[available]))
                certified = float(values[index]) - runner_up > e_max
            else:
                certified = True
        discords.append(Discord(start=index, score=float(values[index]), certified=certified))

    return discords


def detect_anomalies(
    series_a: SeriesLike,
    dictionary: Dictionary,
    top_k: int = 1,
    regions: Optional[Iterable[Tuple[int, int]]] = None,
    settings: Optional[JoinSettings] = None
) -> AnomalyReport:
    """
    Score every window of T_A by its distance to the dictionary and report discords.

    Args:
        series_a: Series to scan
        dictionary: Dictionary of normal behavior; its e_max certifies rank 1
        top_k: Number of discords to report
        regions: Optional labeled anomalous regions [start, end) for an AUC score
        settings: Join execution settings

    Returns:
        AnomalyReport
    """
    series_a = as_series(series_a)
    scores = join_dictionary(series_a, dictionary, dictionary.m, settings)
    discords = find_discords(scores, dictionary.e_max, top_k)

    auc = None
    if regions is not None:
        labels = window_labels(regions, series_a.n, dictionary.m)
        auc = auc_score(scores.values, labels)

    logger.info(
        "Anomaly scan complete",
        discords=len(discords),
        certified=sum(d.certified for d in discords),
        e_max=dictionary.e_max,
        auc=auc
    )
    return AnomalyReport(
        scores=scores,
        discords=tuple(discords),
        e_max_used=dictionary.e_max,
        auc=auc
    )
