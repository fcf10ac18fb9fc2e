from __future__ import annotations

import re
import pathlib

from typing import TYPE_CHECKING

import numpy as np

from sigworks._core import Stream, DataError
from ._corpus import LabeledCorpus
from ._tables import Experiment

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

PENDIGITS_FILES = {
    'train': 'pendigits-orig.tra',
    'test': 'pendigits-orig.tes',
}

_LABEL = re.compile(r'"\s*(\d)\s*"')


def load_pendigits(path: PathLike) -> LabeledCorpus:
    """
    Load the original (unresampled) pen-based digit trajectories.

    Each instance starts with a `.SEGMENT DIGIT` line whose quoted field is
    the digit label. Its `.PEN_DOWN` ... `.PEN_UP` blocks hold one
    'x y' stylus position per line. Strokes are joined in order into a
    single 2D stream. Other dot-commands are ignored.

    Parameters
    ----------
    path : PathLike
        A directory with 'pendigits-orig.tra' and 'pendigits-orig.tes', or
        a single file. Instances in '.tes' files are tagged 'test', all
        others 'train'.

    Returns
    -------
    corpus : LabeledCorpus
        Streams labeled '0' through '9'. Ids look like 'train-17'.

    Raises
    ------
    FileNotFoundError
        'path' does not exist, or a directory is missing either file.
    DataError
        Malformed records. The message includes the file and line number.

    """

    path = pathlib.Path(path)
    if path.is_dir():
        files = [(path / name, tag) for tag, name in PENDIGITS_FILES.items()]
    else:
        tag = 'test' if path.suffix == '.tes' else 'train'
        files = [(path, tag)]

    streams, splits = [], []
    for filepath, tag in files:
        if not filepath.exists():
            raise FileNotFoundError(f"{filepath} does not exist.")

        parsed = _parse_unipen(filepath, tag)
        streams.extend(parsed)
        splits.extend([tag]*len(parsed))

    return LabeledCorpus(streams, splits, name='PenDigits')


def pendigits_experiment(corpus: LabeledCorpus,
                         digit: str | int) -> Experiment:
    """
    One-digit anomaly detection partition.

    The corpus is every training instance of 'digit'. The test set is the
    full annotator test set, where every other digit is an anomaly.

    Parameters
    ----------
    corpus : LabeledCorpus
        Output of `load_pendigits`.
    digit : str or int
        Digit treated as normal.

    Returns
    -------
    experiment : Experiment
        The partition, see `Experiment`.

    Raises
    ------
    DataError
        No training instances of 'digit'.

    """

    digit = str(digit)

    normal = corpus.select('train', digit)
    if not normal:
        raise DataError(f"No training instances of {digit=}.")

    test = corpus.select('test')
    is_anomaly = np.array([s.label != digit for s in test], dtype=bool)

    return Experiment(name=corpus.name, normal_class=digit, seed=None,
                      corpus=normal, test=test, is_anomaly=is_anomaly)


def _parse_unipen(filepath: pathlib.Path, tag: str) -> list[Stream]:

    streams = []
    label, points, pen_down, start = None, [], False, 0

    def finish() -> None:
        if label is None:
            return
        if not points:
            raise DataError(f"Instance at {filepath}, line {start} has no"
                            " pen-down points.")

        streams.append(
            Stream(points, id=f"{tag}-{len(streams)}", label=label)
        )

    with open(filepath, encoding='utf-8', errors='replace') as datafile:
        for lineno, line in enumerate(datafile, start=1):
            line = line.strip()
            if not line:
                continue

            if line.startswith('.SEGMENT'):
                finish()

                match = _LABEL.search(line)
                if match is None:
                    raise DataError(f"No digit label in {filepath}, line"
                                    f" {lineno}: {line!r}")

                label, points, pen_down, start = match[1], [], False, lineno

            elif line.startswith('.PEN_DOWN'):
                pen_down = True
            elif line.startswith('.PEN_UP'):
                pen_down = False
            elif line.startswith('.'):
                continue

            elif pen_down and label is not None:
                try:
                    x, y = (float(v) for v in line.split())
                except ValueError as e:
                    raise DataError(f"Malformed coordinates in {filepath},"
                                    f" line {lineno}: {line!r}") from e

                points.append((x, y))

            # free text outside pen-down blocks continues a comment

    finish()

    return streams
