from __future__ import annotations

import logging

from typing import TYPE_CHECKING

import numpy as np

from sigworks._core import DataError
from sigworks.mathutils import quantile_higher
from ._model import fit, conformance, score_batch
from ._tables import Calibration, Detection

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

    from ._model import ConformanceModel

logger = logging.getLogger(__name__)


def calibrate(corpus_features: npt.ArrayLike, epsilon: float = 0.05,
              seed: int = 0, spectral_cutoff: float = 1e-10,
              null_tolerance: float = 1e-8, n_jobs: int = 1) -> Calibration:
    """
    Split-half calibration of the anomaly threshold.

    The corpus rows are shuffled with 'seed' and split into two halves. The
    first half gets the extra row when the count is odd. A model is fit on
    the first half and every row of the second half is scored against it.
    The threshold is the higher `(1 - epsilon)` empirical quantile of those
    scores, so it is always an attained score, and +inf sorts above every
    finite score.

    Parameters
    ----------
    corpus_features : ArrayLike, shape(m, p)
        Corpus feature vectors, `m >= 4`.
    epsilon : float, optional
        Target false positive rate in (0, 1]. The default is 0.05.
    seed : int, optional
        Seed for the shuffle. The default is 0. Results do not depend on
        'n_jobs'.
    spectral_cutoff : float, optional
        Relative eigenvalue cutoff. The default is 1e-10.
    null_tolerance : float, optional
        Relative out-of-span tolerance. The default is 1e-8.
    n_jobs : int, optional
        Workers for scoring the held-out half. The default is 1.

    Returns
    -------
    calibration : Calibration
        Median and threshold of the held-out scores, see `Calibration`.

    Raises
    ------
    ValueError
        'epsilon' must be in (0, 1].
    DataError
        'corpus_features' must have at least 4 rows.

    """

    if not 0. < epsilon <= 1.:
        raise ValueError(f"'epsilon' must be in (0, 1], got {epsilon=}.")

    X = np.asarray(corpus_features, dtype=float)
    if X.ndim != 2 or X.shape[0] < 4:
        raise DataError(f"Calibration needs a 2D corpus with at least 4 rows,"
                        f" got shape={X.shape}.")

    m = X.shape[0]
    n_fit = m - m // 2

    order = np.random.default_rng(seed).permutation(m)
    fitted, held_out = X[order[:n_fit]], X[order[n_fit:]]

    model = fit(fitted, spectral_cutoff, null_tolerance)
    scores = np.sort(score_batch(model, held_out, n_jobs))

    calibration = Calibration(
        median_R=float(np.median(scores)),
        threshold=quantile_higher(scores, 1. - epsilon),
        epsilon=float(epsilon),
        seed=int(seed),
        n_fit=n_fit,
        n_held_out=m - n_fit,
        tail_scores=scores,
    )

    logger.info("Calibrated on %d + %d rows: median_R=%g, threshold=%g",
                n_fit, m - n_fit, calibration.median_R, calibration.threshold)

    return calibration


def detect(model: ConformanceModel, calibration: Calibration,
           x: npt.ArrayLike) -> Detection:
    """
    Flag a feature vector as anomalous.

    Parameters
    ----------
    model : ConformanceModel
        A fitted model.
    calibration : Calibration
        Output of `calibrate`.
    x : ArrayLike, shape(p,)
        Finite feature vector.

    Returns
    -------
    detection : Detection
        `is_anomaly` is True when the conformance strictly exceeds the
        threshold. Out-of-span inputs are anomalous for any finite threshold.

    """
    score = conformance(model, x)
    threshold = float(calibration.threshold)

    return Detection(is_anomaly=bool(score.value > threshold), score=score,
                     threshold=threshold)
