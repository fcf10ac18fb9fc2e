"""
Conformance scoring. A corpus of normal feature vectors (usually stream
signatures) defines a variance norm, the dual of its centered covariance.
The conformance of a new vector is its variance-norm distance to the nearest
corpus member and serves as the anomaly score. Split-half calibration turns
scores into decisions with a target false positive rate.

"""

from ._tables import Score, Calibration, Detection
from ._model import (
    ConformanceModel,
    fit,
    variance_norm,
    conformance,
    score_batch,
    pipeline_features,
)
from ._moments import (
    expected_signature,
    second_moment_via_shuffle,
    covariance_via_shuffle,
    shuffle_variance_norm,
)
from ._calibrate import calibrate, detect
from ._persist import save_model, load_model

__all__ = [
    'Score',
    'Calibration',
    'Detection',
    'ConformanceModel',
    'fit',
    'variance_norm',
    'conformance',
    'score_batch',
    'pipeline_features',
    'expected_signature',
    'second_moment_via_shuffle',
    'covariance_via_shuffle',
    'shuffle_variance_norm',
    'calibrate',
    'detect',
    'save_model',
    'load_model',
]
