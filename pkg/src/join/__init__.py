"""
Dictionary joins and their consumers: anomaly scoring, certified discords, evaluation.
"""

from .dict_join import join_dictionary
from .evaluation import ErrorSummary, auc_score, summarize_errors, window_labels
from .discords import AnomalyReport, Discord, detect_anomalies, find_discords

__all__ = [
    "join_dictionary",
    "ErrorSummary",
    "auc_score",
    "summarize_errors",
    "window_labels",
    "AnomalyReport",
    "Discord",
    "detect_anomalies",
    "find_discords"
]
