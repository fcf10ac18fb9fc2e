"""
Evaluation metrics for anomaly scores: rank-based ROC AUC, the best
balanced accuracy over all thresholds, empirical CDFs for plotting score
distributions, and stratified bootstrap standard errors. Scores are extended
reals, so out-of-span (+inf) conformance values are ranked, never dropped.
Score files are read and written with `read_scores` and `write_scores`.

"""

from ._tables import BalancedAccuracy, ScoreTable, EcdfTable
from ._metrics import (
    ScoredDataset,
    roc_auc,
    best_balanced_accuracy,
    ecdf,
    bootstrap_se,
)
from ._io import read_scores, write_scores

__all__ = [
    'BalancedAccuracy',
    'ScoreTable',
    'EcdfTable',
    'ScoredDataset',
    'roc_auc',
    'best_balanced_accuracy',
    'ecdf',
    'bootstrap_se',
    'read_scores',
    'write_scores',
]
