from __future__ import annotations

import logging
import pathlib

from typing import TYPE_CHECKING
from collections import Counter

import numpy as np

from sigworks._core import Stream, DataError
from ._corpus import LabeledCorpus
from ._tables import Experiment

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

logger = logging.getLogger(__name__)


def load_ucr(*paths: PathLike, delimiter: str | None = None,
             name: str | None = None) -> LabeledCorpus:
    """
    Load univariate series in the UCR text layout.

    Each row is one series with the class label in the first field. All
    rows, across all files, must have the same length. Labels are read as
    text and numeric labels are canonicalized, e.g., '1.0' becomes '1'.

    Parameters
    ----------
    *paths : PathLike
        One or more files. Files whose name contains '_TEST' are tagged
        'test', all others 'train'.
    delimiter : str or None, optional
        Field delimiter. None (default) uses a tab for '.tsv' files and a
        comma otherwise.
    name : str or None, optional
        Dataset name. Defaults to the first file name up to '_TRAIN' or
        '_TEST'.

    Returns
    -------
    corpus : LabeledCorpus
        1D streams without timestamps. Ids look like 'Beef_TRAIN-4'.

    Raises
    ------
    ValueError
        At least one path is required.
    DataError
        Ragged rows, missing values, or unparseable numbers.

    """
    import pandas as pd

    if not paths:
        raise ValueError("At least one path is required.")

    streams, splits, length = [], [], None
    for path in map(pathlib.Path, paths):
        sep = delimiter or ('\t' if path.suffix == '.tsv' else ',')
        tag = 'test' if '_TEST' in path.name.upper() else 'train'

        try:
            df = pd.read_csv(path, sep=sep, header=None, dtype={0: str},
                             skipinitialspace=True)
        except pd.errors.ParserError as e:
            raise DataError(f"Ragged rows in {path}: {e}") from e

        values = df.iloc[:, 1:].apply(pd.to_numeric, errors='coerce')
        if values.isna().to_numpy().any():
            row = int(values.isna().any(axis=1).to_numpy().argmax()) + 1
            raise DataError(f"Missing or non-numeric values in {path}, row"
                            f" {row}. Rows must have equal length.")

        if length is None:
            length = values.shape[1]
        elif values.shape[1] != length:
            raise DataError(f"Series in {path} have length"
                            f" {values.shape[1]}, expected {length}.")

        stem = path.stem
        for i, (label, row) in enumerate(zip(df[0], values.to_numpy())):
            streams.append(
                Stream(row, id=f"{stem}-{i}", label=_canonical_label(label))
            )
            splits.append(tag)

    if name is None:
        name = pathlib.Path(paths[0]).stem
        name = name.split('_TRAIN')[0].split('_TEST')[0]

    logger.info("Loaded %d series of length %d from %s", len(streams),
                length, name)

    return LabeledCorpus(streams, splits, name=name)


def ucr_splits(corpus: LabeledCorpus, anomaly_rate: float,
               n_splits: int = 10, normal_class: str | None = None,
               train_fraction: float = 0.8) -> list[Experiment]:
    """
    Seeded contaminated-corpus splits for univariate benchmarks.

    Train and test files are pooled. For split `k` (seed `k`), a random
    `train_fraction` of the normal series forms the corpus, contaminated by
    `round(anomaly_rate*n_train)` random anomalies. The remaining normal
    series and the remaining anomalies form the test set. Rounding is half
    up.

    Parameters
    ----------
    corpus : LabeledCorpus
        Output of `load_ucr`.
    anomaly_rate : float
        Contamination rate in [0, 1), e.g., 0.001 or 0.05.
    n_splits : int, optional
        Number of splits, seeded 0 to `n_splits - 1`. The default is 10.
    normal_class : str or None, optional
        Normal label. None uses `corpus.normal_class` if set, otherwise the
        most frequent label (smallest label on ties).
    train_fraction : float, optional
        Fraction of normal series placed in the corpus. The default is 0.8.

    Returns
    -------
    experiments : list[Experiment]
        One partition per split.

    Raises
    ------
    ValueError
        'anomaly_rate' must be in [0, 1) and 'train_fraction' in (0, 1).
    DataError
        Unknown normal class, no anomalies, or too few normal series for a
        nonempty corpus and test set.

    """

    if not 0. <= anomaly_rate < 1.:
        raise ValueError(f"'anomaly_rate' must be in [0, 1), got"
                         f" {anomaly_rate=}.")
    elif not 0. < train_fraction < 1.:
        raise ValueError(f"'train_fraction' must be in (0, 1), got"
                         f" {train_fraction=}.")

    if normal_class is None:
        normal_class = corpus.normal_class
    if normal_class is None:
        counts = Counter(corpus.labels)
        normal_class = min(counts, key=lambda k: (-counts[k], k))

    normal_class = _canonical_label(normal_class)

    normal = corpus.select(label=normal_class)
    anomalies = [s for s in corpus if s.label != normal_class]

    n_train = _round_half_up(train_fraction*len(normal))
    n_contam = _round_half_up(anomaly_rate*n_train)

    if not normal:
        raise DataError(f"No series with {normal_class=}.")
    elif not 0 < n_train < len(normal):
        raise DataError(f"{len(normal)} normal series cannot fill both a"
                        f" corpus and a test set.")
    elif n_contam >= len(anomalies):
        raise DataError(f"Need more than {n_contam} anomalies, found"
                        f" {len(anomalies)}.")

    experiments = []
    for seed in range(n_splits):
        rng = np.random.default_rng(seed)
        normal_order = rng.permutation(len(normal))
        anomaly_order = rng.permutation(len(anomalies))

        train = [normal[i] for i in normal_order[:n_train]]
        contam = [anomalies[i] for i in anomaly_order[:n_contam]]

        test_normal = [normal[i] for i in normal_order[n_train:]]
        test_anomaly = [anomalies[i] for i in anomaly_order[n_contam:]]

        is_anomaly = np.r_[np.zeros(len(test_normal), dtype=bool),
                           np.ones(len(test_anomaly), dtype=bool)]

        experiments.append(Experiment(
            name=corpus.name,
            normal_class=normal_class,
            seed=seed,
            corpus=train + contam,
            test=test_normal + test_anomaly,
            is_anomaly=is_anomaly,
        ))

    return experiments


def _canonical_label(label: str) -> str:
    label = str(label).strip()
    try:
        value = float(label)
    except ValueError:
        return label

    return str(int(value)) if value.is_integer() else label


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))
