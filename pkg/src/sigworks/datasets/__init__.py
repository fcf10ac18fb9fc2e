"""
Dataset ingestion and experiment builders. Loaders read the original
pen-based digit trajectories, UCR-style univariate series, and pre-decoded
AIS vessel reports into labeled streams. Experiment builders turn those
into one-class partitions: a corpus of normal streams plus a labeled test
set. Files are never downloaded; pass local paths.

Available loaders and builders:

1. `load_pendigits` / `pendigits_experiment` - handwritten digits, one
   digit is normal and every other digit is an anomaly
2. `load_ucr` / `ucr_splits` - univariate series with a contaminated
   corpus and ten seeded splits
3. `load_ais` / `build_ais_experiment` - vessel tracks, large vessels are
   normal and small vessels are anomalies
4. `make_trajectories` - synthetic vessel tracks for the AIS pipeline

"""

from sigworks.streams import haversine

from ._corpus import LabeledCorpus
from ._tables import Experiment, AISExperiment
from ._pendigits import load_pendigits, pendigits_experiment
from ._ucr import load_ucr, ucr_splits
from ._ais import (
    AIS_COLUMNS,
    VesselRecord,
    load_ais,
    build_ais_experiment,
    weighted_sample,
)
from ._synthetic import make_trajectories

__all__ = [
    'LabeledCorpus',
    'Experiment',
    'AISExperiment',
    'VesselRecord',
    'AIS_COLUMNS',
    'load_pendigits',
    'pendigits_experiment',
    'load_ucr',
    'ucr_splits',
    'load_ais',
    'build_ais_experiment',
    'weighted_sample',
    'make_trajectories',
    'haversine',
]
