"""
Command-line interface. After installation, run `sigworks -h` for a list of
subcommands and `sigworks <subcommand> -h` for their options. Settings come
from the `RunConfig` defaults, then an optional YAML file (`--config`), then
command-line flags.

Exit codes are 0 on success, 1 for data errors (malformed inputs, dimension
mismatches, too-small corpora), and 2 for configuration or usage errors.

"""

from __future__ import annotations

import sys
import logging
import pathlib
import argparse

from typing import Sequence

from sigworks._core import ConfigError
from sigworks.streams import TRANSFORMS
from sigworks.utils import Timer

from ._config import RunConfig
from ._commands import (
    DATASET_KINDS,
    cmd_prepare,
    cmd_fit,
    cmd_score,
    cmd_calibrate,
    cmd_eval,
)
from ._reproduce import EXPERIMENTS, ResultsTable, reproduce

__all__ = [
    'RunConfig',
    'ResultsTable',
    'reproduce',
    'main',
]


def cmd_reproduce(args: argparse.Namespace, config: RunConfig) -> int:
    """Run an experiment protocol, print the table, optionally save it."""

    prefix = None
    if args.output is not None:
        prefix = pathlib.Path(args.output).with_suffix('')

    results = reproduce(args.experiment, args.inputs, config,
                        orders=args.orders, rates=args.rates,
                        ecdf_prefix=prefix,
                        progress=args.progress)

    print(results.df.to_string(index=False))
    if args.output is not None:
        results.to_csv(args.output)

    return 0


def _build_parser() -> argparse.ArgumentParser:

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config',
        help='YAML file of run settings',
    )
    common.add_argument(
        '--verbose',
        action='store_true',
        help='log progress and timings at DEBUG level',
    )
    common.add_argument(
        '--progress',
        action='store_true',
        help='show progress bars for batch steps',
    )
    common.add_argument(
        '--n-jobs',
        type=int,
        help='number of parallel workers',
    )
    common.add_argument(
        '--seed',
        type=int,
        help='base random seed',
    )

    parser = argparse.ArgumentParser(
        prog='sigworks',
        description='Signature conformance anomaly detection for streams.',
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    # prepare
    prepare = subparsers.add_parser(
        'prepare', parents=[common],
        help='convert a raw dataset into stream files',
    )
    prepare.add_argument('kind', choices=DATASET_KINDS)
    prepare.add_argument('inputs', nargs='*', help='raw dataset paths')
    prepare.add_argument('-o', '--output', required=True,
                         help='output directory')
    prepare.add_argument('--anomaly-rate', type=float,
                         help='UCR contamination rate')
    prepare.add_argument('--sample-size', type=int,
                         help='AIS sub-streams sampled per subset')
    prepare.set_defaults(func=cmd_prepare)

    # fit
    fit = subparsers.add_parser(
        'fit', parents=[common],
        help='fit a conformance model on a corpus file',
    )
    fit.add_argument('corpus', help='stream file of normal data')
    fit.add_argument('-o', '--output', required=True, help='model file')
    fit.add_argument('--order', type=int, help='signature order N')
    fit.add_argument('--transforms', nargs='*', choices=TRANSFORMS,
                     help='stream transforms, applied in canonical order')
    fit.add_argument('--normalization',
                     choices=['none', 'per-stream', 'corpus'])
    fit.add_argument('--parameterization',
                     choices=['uniform', 'from-timestamps'])
    fit.set_defaults(func=cmd_fit)

    # score
    score = subparsers.add_parser(
        'score', parents=[common],
        help='score a stream file against a model',
    )
    score.add_argument('model', help='model file')
    score.add_argument('streams', help='stream file to score')
    score.add_argument('-o', '--output', required=True, help='score file')
    score.set_defaults(func=cmd_score)

    # calibrate
    calibrate = subparsers.add_parser(
        'calibrate', parents=[common],
        help='set the detection threshold of a model',
    )
    calibrate.add_argument('model', help='model file')
    calibrate.add_argument('-o', '--output',
                           help='output model file, defaults to overwrite')
    calibrate.add_argument('--epsilon', type=float,
                           help='target false positive rate in (0, 1]')
    calibrate.set_defaults(func=cmd_calibrate)

    # eval
    evaluate = subparsers.add_parser(
        'eval', parents=[common],
        help='evaluate normal and anomaly score files',
    )
    evaluate.add_argument('normal', help='scores of normal streams')
    evaluate.add_argument('anomaly', help='scores of anomalous streams')
    evaluate.add_argument('--metric', default='auc',
                          choices=['auc', 'balanced-accuracy'])
    evaluate.add_argument('--bootstrap', type=int,
                          help='number of bootstrap resamples')
    evaluate.add_argument('--ecdf', metavar='PREFIX',
                          help='write per-class ECDF tables to PREFIX-*.csv')
    evaluate.set_defaults(func=cmd_eval)

    # reproduce
    repro = subparsers.add_parser(
        'reproduce', parents=[common],
        help='run a full experiment protocol',
        description='Run an experiment end to end from the raw dataset'
                    ' files. Output of prepare is not accepted here.',
    )
    repro.add_argument('experiment', choices=EXPERIMENTS)
    repro.add_argument('inputs', nargs='*',
                       help='raw dataset paths: the pendigits folder or the'
                            ' UCR train and test files')
    repro.add_argument('-o', '--output',
                       help='results CSV file; pendigits also writes'
                            ' ECDFs to <stem>_ecdf_N<n>.csv')
    repro.add_argument('--orders', nargs='+', type=int,
                       help='signature orders to run')
    repro.add_argument('--rates', nargs='+', type=float,
                       help='UCR contamination rates')
    repro.add_argument('--segments', nargs='+', type=float, metavar='M',
                       dest='segments_m',
                       help='AIS sub-stream lengths in meters')
    repro.add_argument('--sample-size', type=int,
                       help='AIS sub-streams sampled per subset')
    repro.set_defaults(func=cmd_reproduce)

    return parser


_OVERRIDES = (
    'n_jobs',
    'seed',
    'order',
    'transforms',
    'normalization',
    'parameterization',
    'epsilon',
    'bootstrap',
    'anomaly_rate',
    'sample_size',
    'segments_m',
)


def _load_config(args: argparse.Namespace) -> RunConfig:
    if args.config is None:
        config = RunConfig()
    else:
        config = RunConfig.from_yaml(args.config)

    overrides = {key: getattr(args, key) for key in _OVERRIDES
                 if hasattr(args, key)}

    return config.update(**overrides)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the command-line interface.

    Parameters
    ----------
    argv : Sequence[str] or None, optional
        Arguments without the program name. None (default) reads
        `sys.argv`.

    Returns
    -------
    code : int
        Exit code, 0 on success.

    """

    parser = _build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        config = _load_config(args)
        with Timer(f"sigworks {args.command}"):
            return args.func(args, config)
    except ConfigError as e:
        print(f"sigworks: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"sigworks: error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
