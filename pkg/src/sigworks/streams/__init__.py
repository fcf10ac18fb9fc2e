"""
Stream transformations and preprocessing. Includes the time, time-diff,
lead-lag, and invisibility transforms, Min-Max normalization, and trajectory
preprocessing (compression and disintegration into fixed-length pieces).
All functions are pure and return new `Stream` instances.

"""

from ._transforms import (
    TRANSFORMS,
    time_augment,
    time_diff_augment,
    lead_lag,
    invisibility,
    apply_transforms,
    canonical_transforms,
    transformed_dim,
)
from ._normalize import min_max_normalize, corpus_normalization
from ._distance import haversine, euclidean
from ._trajectory import compress, disintegrate

__all__ = [
    'TRANSFORMS',
    'time_augment',
    'time_diff_augment',
    'lead_lag',
    'invisibility',
    'apply_transforms',
    'canonical_transforms',
    'transformed_dim',
    'min_max_normalize',
    'corpus_normalization',
    'haversine',
    'euclidean',
    'compress',
    'disintegrate',
]
