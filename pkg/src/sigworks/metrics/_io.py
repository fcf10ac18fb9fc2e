from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

from sigworks._core import DataError
from ._tables import ScoreTable

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

    import numpy.typing as npt


def read_scores(filepath: PathLike) -> ScoreTable:
    """
    Read a score file.

    Score files are comma-separated text with the header 'id,score,label'.
    Scores are decimals or 'inf'. Labels may be empty.

    Parameters
    ----------
    filepath : PathLike
        Path to the score file.

    Returns
    -------
    table : ScoreTable
        The parsed scores.

    Raises
    ------
    DataError
        Missing columns or non-numeric scores.

    """
    import pandas as pd

    try:
        return ScoreTable.from_csv(filepath)
    except pd.errors.EmptyDataError as e:
        raise DataError(f"{filepath} is empty; expected at least a header"
                        " row.") from e
    except DataError as e:
        raise DataError(f"{filepath}: {e}") from e
    except ValueError as e:
        raise DataError(f"{filepath} is not a score file: {e}") from e


def write_scores(filepath: PathLike, ids: Sequence, scores: npt.ArrayLike,
                 labels: Sequence | None = None) -> ScoreTable:
    """
    Write a score file.

    Floats are written with full precision, so identical scores always give
    byte-identical files. Infinite scores are written as 'inf'.

    Parameters
    ----------
    filepath : PathLike
        Output path. Existing files are overwritten.
    ids : Sequence
        Stream ids.
    scores : ArrayLike
        One score per id.
    labels : Sequence or None, optional
        Stream labels. None (default) writes empty labels.

    Returns
    -------
    table : ScoreTable
        The table that was written.

    """
    table = ScoreTable.from_scores(ids, scores, labels)
    table.to_csv(filepath)
    return table
