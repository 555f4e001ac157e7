"""
Dictionary-quality experiment: how much space each learner saves by the time
its cores have captured every class of a labeled series.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from scipy.stats import binomtest

from ..config.logging import get_logger
from ..config.models import JoinSettings, LearnConfig
from ..dictionary.learner import DictionaryLearner, RandomBaselineLearner
from .synthetic import LabeledSeries, class_insertion_series, make_rng


logger = get_logger(__name__)


def _classes_hit(core: int, m: int, instances: Dict[str, List[int]], length: int) -> List[str]:
    """Classes with an instance overlapping [core, core + m) by at least m/2 samples."""
    hit = []
    for name, starts in instances.items():
        for start in starts:
            overlap = min(core + m, start + length) - max(core, start)
            if 2 * overlap >= m:
                hit.append(name)
                break
    return hit


def space_saving_at_full_coverage(labeled: LabeledSeries, learner: DictionaryLearner) -> float:
    """
    Space saving at the first iteration whose cores cover every class.

    Returns 0.0 when learning runs out of candidates first.
    """
    m = learner.config.m
    wanted = {name for name, starts in labeled.instances.items() if starts}
    covered = set()
    n = labeled.values.shape[0]

    for step in learner.iterate(labeled.values):
        covered.update(_classes_hit(step.core_start, m, labeled.instances, labeled.instance_length))
        if covered >= wanted:
            return 1.0 - step.stored_samples / n
    return 0.0


@dataclass(frozen=True, eq=False)
class QualityResult:
    """Per-trial space savings of both learners plus a one-sided sign test."""

    table: pd.DataFrame
    p_value: float
    wins: int
    losses: int

    @property
    def greedy_mean(self) -> float:
        return float(self.table["greedy"].mean())

    @property
    def random_mean(self) -> float:
        return float(self.table["random"].mean())


def compare_with_random_baseline(
    trials: int,
    seed: Optional[int] = None,
    m: int = 50,
    k: float = 1.5,
    settings: Optional[JoinSettings] = None
) -> QualityResult:
    """
    Run the greedy and random learners on fresh class-insertion series.

    The p-value tests whether greedy beats random more often than chance
    (ties dropped).
    """
    rng = make_rng(seed)
    # the stop rule is unused: each learner is stepped until every class is covered
    config = LearnConfig(m=m, k=k, space_saving_target=0.0)
    rows = []

    for trial in range(trials):
        labeled = class_insertion_series(rng, m)
        greedy = space_saving_at_full_coverage(labeled, DictionaryLearner(config, settings))
        random = space_saving_at_full_coverage(labeled, RandomBaselineLearner(config, rng=rng, settings=settings))
        rows.append({"trial": trial, "n": labeled.values.shape[0], "greedy": greedy, "random": random})
        logger.debug("Quality trial complete", trial=trial, greedy=greedy, random=random)

    table = pd.DataFrame(rows, columns=["trial", "n", "greedy", "random"])
    wins = int((table["greedy"] > table["random"]).sum())
    losses = int((table["greedy"] < table["random"]).sum())
    decided = wins + losses
    p_value = float(binomtest(wins, decided, 0.5, alternative="greater").pvalue) if decided else 1.0

    logger.log_metrics({
        "trials": trials,
        "wins": wins,
        "losses": losses,
        "p_value": p_value,
        "greedy_mean": float(np.mean(table["greedy"])) if trials else 0.0,
        "random_mean": float(np.mean(table["random"])) if trials else 0.0
    }, "compare_with_random_baseline")
    return QualityResult(table=table, p_value=p_value, wins=wins, losses=losses)
