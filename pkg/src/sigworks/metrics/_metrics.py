from __future__ import annotations

import logging

from typing import TYPE_CHECKING, Callable

import numpy as np
import pandas as pd

from sigworks.mathutils import as_extended
from ._tables import BalancedAccuracy, EcdfTable

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

    from ._tables import ScoreTable

logger = logging.getLogger(__name__)


class ScoredDataset:
    """Scores with anomaly labels."""

    __slots__ = ('_scores', '_labels',)

    def __init__(self, scores: npt.ArrayLike, labels: npt.ArrayLike) -> None:
        """
        Scores paired with boolean labels, True for anomalies. Scores are
        extended reals: +inf ranks above every finite score. NaN is rejected
        because it cannot be ordered.

        Parameters
        ----------
        scores : ArrayLike, shape(n,)
            Anomaly scores, higher is more anomalous.
        labels : ArrayLike, shape(n,)
            True for anomalies, False for normal data.

        Raises
        ------
        ValueError
            'scores' contains NaN.
        ValueError
            'scores' and 'labels' must have the same length.

        """

        scores = as_extended(scores, 'scores')
        labels = np.asarray(labels, dtype=bool).ravel()

        if scores.size != labels.size:
            raise ValueError("'scores' and 'labels' must have the same"
                             " length.")

        scores.setflags(write=False)
        labels.setflags(write=False)

        self._scores = scores
        self._labels = labels

    def __len__(self) -> int:
        return self._scores.size

    def __repr__(self) -> str:
        return (
            f"ScoredDataset(n_normal={self.normal.size},"
            f" n_anomaly={self.anomaly.size})"
        )

    @classmethod
    def from_groups(cls, normal: npt.ArrayLike,
                    anomaly: npt.ArrayLike) -> ScoredDataset:
        """Dataset from separate normal and anomaly score arrays."""
        normal = as_extended(normal, 'normal')
        anomaly = as_extended(anomaly, 'anomaly')

        labels = np.r_[np.zeros(normal.size, bool),
                       np.ones(anomaly.size, bool)]

        return cls(np.r_[normal, anomaly], labels)

    @classmethod
    def from_tables(cls, normal: ScoreTable,
                    anomaly: ScoreTable) -> ScoredDataset:
        """Dataset from two score files, one per class."""
        return cls.from_groups(normal.scores, anomaly.scores)

    @property
    def scores(self) -> np.ndarray:
        """Read-only scores."""
        return self._scores

    @property
    def labels(self) -> np.ndarray:
        """Read-only labels, True for anomalies."""
        return self._labels

    @property
    def normal(self) -> np.ndarray:
        """Scores of normal instances."""
        return self._scores[~self._labels]

    @property
    def anomaly(self) -> np.ndarray:
        """Scores of anomalous instances."""
        return self._scores[self._labels]

    def flipped(self) -> ScoredDataset:
        """Same scores with the labels swapped."""
        return ScoredDataset(self._scores, ~self._labels)

    def _check_two_class(self) -> None:
        if self._labels.all() or not self._labels.any():
            raise ValueError("Both normal and anomalous instances are"
                             " required.")


def roc_auc(ds: ScoredDataset) -> float:
    """
    Area under the ROC curve.

    Computed from midranks as the probability that a random anomaly scores
    higher than a random normal instance, with ties counting 1/2. Infinite
    scores tie with each other and rank above all finite scores.

    Parameters
    ----------
    ds : ScoredDataset
        Scores with both classes present.

    Returns
    -------
    auc : float
        Value in [0, 1].

    Raises
    ------
    ValueError
        Both classes must be present.

    Examples
    --------
    .. code-block:: python

        from sigworks.metrics import ScoredDataset, roc_auc

        ds = ScoredDataset.from_groups([1, 3], [2, 4])
        print(roc_auc(ds))  # 0.75

    """
    from scipy.stats import rankdata

    ds._check_two_class()

    n_anomaly = int(ds.labels.sum())
    n_normal = len(ds) - n_anomaly

    ranks = rankdata(ds.scores)
    u_stat = ranks[ds.labels].sum() - n_anomaly*(n_anomaly + 1) / 2

    return float(u_stat / (n_anomaly*n_normal))


def best_balanced_accuracy(ds: ScoredDataset) -> BalancedAccuracy:
    """
    Best balanced accuracy over all thresholds.

    Scores strictly above the threshold are predicted anomalous. Candidate
    thresholds are -inf, the midpoints between consecutive distinct scores,
    and +inf. A midpoint with +inf is replaced by the score below it, and a
    midpoint with -inf by the largest float below the score above it.
    Ties in balanced accuracy go to the lowest threshold.

    Parameters
    ----------
    ds : ScoredDataset
        Scores with both classes present.

    Returns
    -------
    result : BalancedAccuracy
        The best balanced accuracy with its threshold and rates.

    Raises
    ------
    ValueError
        Both classes must be present.

    """

    ds._check_two_class()

    values = np.unique(ds.scores)
    lower, upper = values[:-1], values[1:]

    with np.errstate(invalid='ignore', over='ignore'):
        middle = lower + (upper - lower) / 2.

    middle = np.where(np.isneginf(lower), np.nextafter(upper, -np.inf),
                      middle)
    middle = np.where(np.isposinf(upper), lower, middle)

    thresholds = np.r_[-np.inf, middle, np.inf]

    normal, anomaly = np.sort(ds.normal), np.sort(ds.anomaly)
    n_normal, n_anomaly = normal.size, anomaly.size

    # integer counts keep ties in 'ba' exact
    tn = np.searchsorted(normal, thresholds, side='right')
    tp = n_anomaly - np.searchsorted(anomaly, thresholds, side='right')

    best = int(np.argmax(tp*n_normal + tn*n_anomaly))

    tpr = tp[best] / n_anomaly
    tnr = tn[best] / n_normal

    return BalancedAccuracy(ba=float((tpr + tnr) / 2.),
                            threshold=float(thresholds[best]),
                            tpr=float(tpr), tnr=float(tnr))


def ecdf(values: npt.ArrayLike) -> EcdfTable:
    """
    Empirical cumulative distribution.

    Parameters
    ----------
    values : ArrayLike
        Nonempty extended-real values.

    Returns
    -------
    table : EcdfTable
        Sorted distinct values and the fraction of values at or below each.
        Mass at +inf is the final step.

    Raises
    ------
    ValueError
        'values' cannot be empty or contain NaN.

    Examples
    --------
    .. code-block:: python

        from sigworks.metrics import ecdf

        print(ecdf([1, 1, 2]))  # value 1 -> 2/3, value 2 -> 1

    """

    values = as_extended(values)
    if values.size == 0:
        raise ValueError("'values' cannot be empty.")

    steps, counts = np.unique(values, return_counts=True)
    fraction = np.cumsum(counts) / values.size

    return EcdfTable(pd.DataFrame({'value': steps, 'fraction': fraction}))


def _balanced_accuracy(ds: ScoredDataset) -> float:
    return best_balanced_accuracy(ds).ba


_METRICS = {
    'auc': roc_auc,
    'balanced-accuracy': _balanced_accuracy,
}


def bootstrap_se(ds: ScoredDataset, metric: str | Callable = 'auc',
                 B: int = 1000, seed: int = 0, n_jobs: int = 1) -> float:
    """
    Bootstrap standard error of a metric.

    Each resample draws normal and anomalous instances with replacement
    from their own class, keeping the class sizes. Resample `b` uses the
    generator `default_rng([seed, b])`, so results do not depend on
    'n_jobs'.

    Parameters
    ----------
    ds : ScoredDataset
        Scores with both classes present.
    metric : {'auc', 'balanced-accuracy'} or Callable, optional
        Metric to resample. A callable takes a `ScoredDataset` and returns
        a float. The default is 'auc'.
    B : int, optional
        Number of resamples, `B >= 1`. The default is 1000.
    seed : int, optional
        Base seed. The default is 0.
    n_jobs : int, optional
        Number of joblib workers. The default is 1.

    Returns
    -------
    se : float
        Population standard deviation of the resampled metric. Exactly 0
        when `B == 1`.

    Raises
    ------
    ValueError
        'B' must be at least 1.
    ValueError
        Unknown metric name.

    """
    from joblib import Parallel, delayed

    if B < 1:
        raise ValueError(f"'B' must be at least 1, got {B=}.")

    if isinstance(metric, str):
        if metric not in _METRICS:
            raise ValueError(f"{metric=} is invalid; valid values are"
                             f" {list(_METRICS)}.")
        metric = _METRICS[metric]

    ds._check_two_class()
    normal, anomaly = ds.normal, ds.anomaly

    if n_jobs == 1:
        stats = [_resample(metric, normal, anomaly, seed, b) for b in range(B)]
    else:
        stats = Parallel(n_jobs=n_jobs)(
            delayed(_resample)(metric, normal, anomaly, seed, b)
            for b in range(B)
        )

    logger.debug("Bootstrapped %d resamples", B)

    return float(np.std(stats))


def _resample(metric: Callable, normal: np.ndarray, anomaly: np.ndarray,
              seed: int, b: int) -> float:
    rng = np.random.default_rng([seed, b])

    normal = normal[rng.integers(0, normal.size, normal.size)]
    anomaly = anomaly[rng.integers(0, anomaly.size, anomaly.size)]

    return float(metric(ScoredDataset.from_groups(normal, anomaly)))
