from __future__ import annotations

import json
import logging
import pathlib

from typing import TYPE_CHECKING, Sequence

from sigworks._core import ConfigError, read_streams, write_streams

if TYPE_CHECKING:  # pragma: no cover
    from argparse import Namespace

    from sigworks._core import Stream
    from ._config import RunConfig

logger = logging.getLogger(__name__)

DATASET_KINDS = ('pendigits', 'ucr', 'ais', 'ais-synthetic')


def cmd_prepare(args: Namespace, config: RunConfig) -> int:
    """
    Convert a raw dataset into stream interchange files.

    Writes one '.jsonl' file per partition into 'args.output' and a
    'manifest.json' with the partition sizes, dataset statistics, and the
    full run configuration. Transforms and normalization are not applied
    here; `fit` records them in the model so scoring can replay them.

    ============= ======================================================
    Kind          Files
    ============= ======================================================
    pendigits     train.jsonl, test.jsonl
    ucr           split-<k>/{corpus,test-normal,test-anomaly}.jsonl
    ais           corpus.jsonl, test-normal.jsonl, test-anomaly.jsonl
    ais-synthetic same as ais, from `make_trajectories`
    ============= ======================================================

    """
    from sigworks import datasets

    kind = args.kind
    if kind not in DATASET_KINDS:
        raise ConfigError(f"{kind=} is invalid; valid values are"
                          f" {list(DATASET_KINDS)}.")
    elif kind != 'ais-synthetic' and not args.inputs:
        raise ConfigError(f"'prepare {kind}' requires at least one input"
                          " path.")

    outdir = pathlib.Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)

    manifest = {'dataset': kind}

    if kind == 'pendigits':
        corpus = datasets.load_pendigits(args.inputs[0])
        manifest['instances'] = len(corpus)
        manifest['per_class'] = corpus.counts()

        for split in ('train', 'test'):
            n = write_streams(outdir / f"{split}.jsonl",
                              corpus.select(split=split))
            manifest[split] = n

    elif kind == 'ucr':
        corpus = datasets.load_ucr(*args.inputs)
        experiments = datasets.ucr_splits(
            corpus, config.anomaly_rate, config.n_splits, config.normal_class,
        )

        manifest['name'] = corpus.name
        manifest['instances'] = len(corpus)
        manifest['normal_class'] = experiments[0].normal_class
        manifest['splits'] = []

        for exp in experiments:
            splitdir = outdir / f"split-{exp.seed}"
            splitdir.mkdir(exist_ok=True)

            normal, anomaly = _partition(exp.test, exp.is_anomaly)
            manifest['splits'].append({
                'seed': exp.seed,
                'corpus': write_streams(splitdir / 'corpus.jsonl',
                                        exp.corpus),
                'test_normal': write_streams(splitdir / 'test-normal.jsonl',
                                             normal),
                'test_anomaly': write_streams(splitdir / 'test-anomaly.jsonl',
                                              anomaly),
            })

    else:
        if kind == 'ais':
            records, stats = datasets.load_ais(
                args.inputs[0], config.ais_columns, return_stats=True,
            )
            manifest['stats'] = stats
        else:
            records = datasets.make_trajectories(
                hours=config.synthetic_hours, seed=config.seed,
            )

        exp = build_experiment(records, config)

        manifest['vessels'] = {
            'corpus': exp.n_corpus_vessels,
            'test_normal': exp.n_test_vessels,
            'test_anomaly': exp.n_anomaly_vessels,
        }
        manifest['corpus'] = write_streams(outdir / 'corpus.jsonl',
                                           exp.corpus)
        manifest['test_normal'] = write_streams(outdir / 'test-normal.jsonl',
                                                exp.normal_test)
        manifest['test_anomaly'] = write_streams(
            outdir / 'test-anomaly.jsonl', exp.anomaly_test,
        )

    manifest['config'] = config.to_dict()
    with open(outdir / 'manifest.json', 'w', encoding='utf-8') as jsonfile:
        json.dump(manifest, jsonfile, indent=2)
        jsonfile.write('\n')

    print(f"Prepared {kind} in {outdir}")
    return 0


def cmd_fit(args: Namespace, config: RunConfig) -> int:
    """Fit a model on a corpus file and save it with its configuration."""
    from sigworks.conformance import ConformanceModel, save_model

    streams = read_streams(args.corpus)

    model = ConformanceModel.from_streams(
        streams, config.order,
        transforms=config.transforms,
        normalization=config.normalization,
        parameterization=config.parameterization,
        spectral_cutoff=config.spectral_cutoff,
        null_tolerance=config.null_tolerance,
        n_jobs=config.n_jobs,
        progress=args.progress,
    )

    save_model(args.output, model, config.to_dict())

    print(f"Fit model: n_corpus={model.n_corpus},"
          f" feature_dim={model.feature_dim}, rank={model.rank}")
    return 0


def cmd_score(args: Namespace, config: RunConfig) -> int:
    """Score every stream in a file against a saved model."""
    from sigworks.metrics import write_scores
    from sigworks.conformance import load_model, score_batch

    model = load_model(args.model)
    streams = read_streams(args.streams)

    X = model.features(streams, config.n_jobs, args.progress)
    values = score_batch(model, X, config.n_jobs, args.progress)

    ids = [str(i) if s.id is None else s.id for i, s in enumerate(streams)]
    labels = [s.label for s in streams]

    write_scores(args.output, ids, values, labels)

    logger.info("Scored %d streams", len(streams))
    return 0


def cmd_calibrate(args: Namespace, config: RunConfig) -> int:
    """
    Calibrate a saved model and write it back with its threshold.

    The model file is overwritten unless 'args.output' is given. The
    recorded run configuration becomes the one used for calibration.

    """
    from sigworks.conformance import calibrate, load_model, save_model

    model = load_model(args.model)

    calibration = calibrate(
        model.corpus_features, config.epsilon, config.seed,
        model.spectral_cutoff, model.null_tolerance, config.n_jobs,
    )

    output = args.model if args.output is None else args.output
    save_model(output, model.with_calibration(calibration), config.to_dict())

    print(f"Calibrated: median_R={calibration.median_R},"
          f" threshold={calibration.threshold}")
    return 0


def cmd_eval(args: Namespace, config: RunConfig) -> int:
    """
    Report a metric with its bootstrap standard error.

    Optionally writes the score ECDF of each class to '<prefix>-normal.csv'
    and '<prefix>-anomaly.csv' for external plotting.

    """
    from sigworks.metrics import (
        ScoredDataset, roc_auc, best_balanced_accuracy, bootstrap_se, ecdf,
        read_scores,
    )

    normal = read_scores(args.normal)
    anomaly = read_scores(args.anomaly)

    ds = ScoredDataset.from_tables(normal, anomaly)

    if args.metric == 'auc':
        value = roc_auc(ds)
        extra = ''
    else:
        result = best_balanced_accuracy(ds)
        value = result.ba
        extra = f" threshold={result.threshold}"

    se = bootstrap_se(ds, args.metric, config.bootstrap, config.seed,
                      config.n_jobs)

    print(f"{args.metric}={value:.6f} se={se:.6f}"
          f" (B={config.bootstrap}, n_normal={ds.normal.size},"
          f" n_anomaly={ds.anomaly.size}){extra}")

    if args.ecdf is not None:
        ecdf(ds.normal).to_csv(f"{args.ecdf}-normal.csv")
        ecdf(ds.anomaly).to_csv(f"{args.ecdf}-anomaly.csv")

    return 0


def build_experiment(records: Sequence, config: RunConfig,
                     segment_m: float | None = None):
    """Vessel-traffic partition with the configured preprocessing."""
    from sigworks.datasets import build_ais_experiment

    if segment_m is None:
        segment_m = config.segment_m

    return build_ais_experiment(
        records, segment_m,
        compress_m=config.compress_m,
        min_displacement_m=config.min_displacement_m,
        max_gap_m=config.max_gap_m,
        sample_size=config.sample_size,
        measure=config.measure,
        seed=config.seed,
    )


def _partition(streams: Sequence[Stream],
               is_anomaly: Sequence[bool]) -> tuple[list, list]:
    normal = [s for s, flag in zip(streams, is_anomaly) if not flag]
    anomaly = [s for s, flag in zip(streams, is_anomaly) if flag]
    return normal, anomaly
