from __future__ import annotations

import logging

from typing import TYPE_CHECKING, Sequence

import numpy as np
import pandas as pd

from sigworks._core import ConfigError
from sigworks.utils import RichTable, Timer

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

    from sigworks.metrics import ScoredDataset
    from ._config import RunConfig

logger = logging.getLogger(__name__)

EXPERIMENTS = ('pendigits', 'ucr', 'ais-synthetic')

DEFAULT_ORDERS = {
    'pendigits': [1, 2, 3, 4, 5],
    'ucr': [5],
    'ais-synthetic': [3],
}

AIS_TRANSFORMS = ['time-diff', 'lead-lag', 'invisibility']


class ResultsTable(RichTable):
    """Experiment results."""

    _required_cols = ['experiment', 'setting', 'segment_m', 'order',
                      'metric', 'value', 'se', 'n_normal', 'n_anomaly']
    _text_cols = ['experiment', 'setting', 'metric']

    def __init__(self, df: pd.DataFrame) -> None:
        """
        Output container for `reproduce`. One row per experiment setting.
        For single-partition experiments 'se' is a bootstrap standard error
        over instances. For split experiments 'value' is the median over
        splits, 'se' is the standard deviation over splits, and the counts
        are those of the first split. 'segment_m' is the sub-stream length
        of vessel-traffic rows and NaN elsewhere.

        Parameters
        ----------
        df : pd.DataFrame
            Rows with the required columns.

        """
        super().__init__(df)

    @classmethod
    def from_rows(cls, rows: Sequence[dict]) -> ResultsTable:
        """Table from a list of row mappings."""
        return cls(pd.DataFrame(list(rows), columns=cls._required_cols))


def reproduce(experiment: str, inputs: Sequence[PathLike], config: RunConfig,
              orders: Sequence[int] | None = None,
              rates: Sequence[float] | None = None,
              segments: Sequence[float] | None = None,
              ecdf_prefix: str | PathLike | None = None,
              progress: bool = False) -> ResultsTable:
    """
    Run a full experiment protocol.

    Experiments start from the raw datasets, not from `prepare` output, so
    every protocol step (splits, contamination, vessel sampling) runs with
    the seeds in 'config'.

    Parameters
    ----------
    experiment : {'pendigits', 'ucr', 'ais-synthetic'}
        Experiment to run. 'pendigits' needs the directory with the original
        digit files, 'ucr' needs the train and test files of one dataset,
        'ais-synthetic' needs no inputs.
    inputs : Sequence[PathLike]
        Raw dataset paths.
    config : RunConfig
        Seeds, cutoffs, worker count, bootstrap size, and the vessel-traffic
        and split settings.
    orders : Sequence[int] or None, optional
        Signature orders. None uses 1-5 for 'pendigits', 5 for 'ucr', and 3
        for 'ais-synthetic'.
    rates : Sequence[float] or None, optional
        Contamination rates for 'ucr'. None uses `config.anomaly_rate`.
    segments : Sequence[float] or None, optional
        Sub-stream lengths in meters for 'ais-synthetic'. None uses
        `config.segments_m`.
    ecdf_prefix : str, PathLike, or None, optional
        For 'pendigits', write the score ECDFs of order `n` to
        '<ecdf_prefix>_ecdf_N<n>.csv', with a 'class' column that is
        'normal' or 'anomaly'. None (default) writes nothing.
    progress : bool, optional
        Show progress bars. The default is False.

    Returns
    -------
    results : ResultsTable
        One row per setting.

    Raises
    ------
    ConfigError
        Unknown experiment or missing inputs.

    """

    if experiment not in EXPERIMENTS:
        raise ConfigError(f"{experiment=} is invalid; valid values are"
                          f" {list(EXPERIMENTS)}.")
    elif experiment != 'ais-synthetic' and not inputs:
        raise ConfigError(f"'reproduce {experiment}' requires raw dataset"
                          " paths.")

    if orders is None:
        orders = DEFAULT_ORDERS[experiment]

    if experiment == 'pendigits':
        rows = _pendigits(inputs[0], orders, config, ecdf_prefix, progress)
    elif experiment == 'ucr':
        if rates is None:
            rates = [config.anomaly_rate]
        rows = _ucr(inputs, orders, rates, config, progress)
    else:
        if segments is None:
            segments = config.segments_m
        rows = _ais_synthetic(orders, segments, config, progress)

    return ResultsTable.from_rows(rows)


def _pendigits(path: PathLike, orders: Sequence[int], config: RunConfig,
               ecdf_prefix: str | PathLike | None,
               progress: bool) -> list[dict]:
    from sigworks.metrics import (
        ScoredDataset, EcdfTable, roc_auc, bootstrap_se, ecdf,
    )
    from sigworks.conformance import ConformanceModel, score_batch
    from sigworks.datasets import load_pendigits, pendigits_experiment

    corpus = load_pendigits(path)

    rows = []
    for N in orders:
        normal, anomaly = [], []
        test_features = None

        for digit in corpus.counts('train'):
            exp = pendigits_experiment(corpus, digit)

            with Timer(f"pendigits N={N} digit={digit}"):
                model = ConformanceModel.from_streams(
                    exp.corpus, N, normalization='per-stream',
                    spectral_cutoff=config.spectral_cutoff,
                    null_tolerance=config.null_tolerance,
                    n_jobs=config.n_jobs,
                )

                # per-stream scaling makes test features digit independent
                if test_features is None:
                    test_features = model.features(exp.test, config.n_jobs,
                                                   progress)

                scores = score_batch(model, test_features, config.n_jobs,
                                     progress)

            normal.append(scores[~exp.is_anomaly])
            anomaly.append(scores[exp.is_anomaly])

        ds = ScoredDataset.from_groups(np.concatenate(normal),
                                       np.concatenate(anomaly))

        auc = roc_auc(ds)
        se = bootstrap_se(ds, 'auc', config.bootstrap, config.seed,
                          config.n_jobs)

        logger.info("pendigits N=%d: auc=%.4f se=%.4f", N, auc, se)
        rows.append(_row('pendigits', '', np.nan, N, 'auc', auc, se, ds))

        if ecdf_prefix is not None:
            steps = pd.concat([
                ecdf(ds.normal).df.assign(**{'class': 'normal'}),
                ecdf(ds.anomaly).df.assign(**{'class': 'anomaly'}),
            ], ignore_index=True)

            table = EcdfTable(steps[['class', 'value', 'fraction']])
            table.to_csv(f"{ecdf_prefix}_ecdf_N{N}.csv")

    return rows


def _ucr(paths: Sequence[PathLike], orders: Sequence[int],
         rates: Sequence[float], config: RunConfig,
         progress: bool) -> list[dict]:
    from sigworks.metrics import ScoredDataset, best_balanced_accuracy
    from sigworks.datasets import load_ucr, ucr_splits
    from sigworks.conformance import ConformanceModel, score_batch

    corpus = load_ucr(*paths)

    rows = []
    for rate in rates:
        experiments = ucr_splits(corpus, rate, config.n_splits,
                                 config.normal_class)

        for N in orders:
            values, first = [], None
            for exp in experiments:
                with Timer(f"{corpus.name} rate={rate} N={N}"
                           f" split={exp.seed}"):
                    model = ConformanceModel.from_streams(
                        exp.corpus, N, transforms=['time'],
                        spectral_cutoff=config.spectral_cutoff,
                        null_tolerance=config.null_tolerance,
                        n_jobs=config.n_jobs,
                    )

                    X = model.features(exp.test, config.n_jobs, progress)
                    scores = score_batch(model, X, config.n_jobs, progress)

                ds = ScoredDataset(scores, exp.is_anomaly)
                values.append(best_balanced_accuracy(ds).ba)

                if first is None:
                    first = ds

            median, spread = float(np.median(values)), float(np.std(values))

            logger.info("%s rate=%g N=%d: ba=%.4f (%.4f)", corpus.name, rate,
                        N, median, spread)
            rows.append(_row(corpus.name, f"rate={rate:g}", np.nan, N,
                             'balanced-accuracy', median, spread, first))

    return rows


def _ais_synthetic(orders: Sequence[int], segments: Sequence[float],
                   config: RunConfig, progress: bool) -> list[dict]:
    from sigworks.mathutils import combinations
    from sigworks.datasets import make_trajectories
    from sigworks.metrics import ScoredDataset, roc_auc, bootstrap_se
    from sigworks.conformance import ConformanceModel, score_batch

    from ._commands import build_experiment

    records = make_trajectories(hours=config.synthetic_hours,
                                seed=config.seed)

    grid = combinations([[False, True]]*len(AIS_TRANSFORMS), AIS_TRANSFORMS)

    rows = []
    for segment_m in segments:
        exp = build_experiment(records, config, segment_m)

        test = exp.normal_test + exp.anomaly_test
        is_anomaly = np.r_[np.zeros(len(exp.normal_test), dtype=bool),
                           np.ones(len(exp.anomaly_test), dtype=bool)]

        for N in orders:
            for flags in grid:
                names = [name for name in AIS_TRANSFORMS if flags[name]]
                setting = ','.join(names) if names else 'none'

                with Timer(f"ais-synthetic D={segment_m:g} N={N}"
                           f" transforms={setting}"):
                    model = ConformanceModel.from_streams(
                        exp.corpus, N, transforms=names,
                        normalization='corpus',
                        spectral_cutoff=config.spectral_cutoff,
                        null_tolerance=config.null_tolerance,
                        n_jobs=config.n_jobs,
                    )

                    X = model.features(test, config.n_jobs, progress)
                    scores = score_batch(model, X, config.n_jobs, progress)

                ds = ScoredDataset(scores, is_anomaly)

                auc = roc_auc(ds)
                se = bootstrap_se(ds, 'auc', config.bootstrap, config.seed,
                                  config.n_jobs)

                logger.info("ais-synthetic D=%g N=%d %s: auc=%.4f",
                            segment_m, N, setting, auc)
                rows.append(_row('ais-synthetic', setting, segment_m, N,
                                 'auc', auc, se, ds))

    return rows


def _row(experiment: str, setting: str, segment_m: float, order: int,
         metric: str, value: float, se: float, ds: ScoredDataset) -> dict:
    return {
        'experiment': experiment,
        'setting': setting,
        'segment_m': float(segment_m),
        'order': order,
        'metric': metric,
        'value': value,
        'se': se,
        'n_normal': ds.normal.size,
        'n_anomaly': ds.anomaly.size,
    }
