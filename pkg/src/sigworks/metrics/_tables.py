from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np
import pandas as pd

from sigworks._core import DataError
from sigworks.utils import RichTable, RichResult

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt


class BalancedAccuracy(RichResult):
    """Best balanced accuracy."""

    _order_keys = ['ba', 'threshold', 'tpr', 'tnr']

    def __init__(self, **kwargs) -> None:
        """
        Output container for `best_balanced_accuracy`.

        ========= ===== ==================================================
        Attribute Type  Description
        ========= ===== ==================================================
        ba        float best `(tpr + tnr) / 2` over all thresholds
        threshold float lowest threshold attaining `ba`, may be +/- inf
        tpr       float anomalies with `score > threshold`, as a fraction
        tnr       float normals with `score <= threshold`, as a fraction
        ========= ===== ==================================================

        """
        super().__init__(**kwargs)


class ScoreTable(RichTable):
    """Per-stream scores."""

    _required_cols = ['id', 'score', 'label']
    _text_cols = ['id', 'label']

    def __init__(self, df: pd.DataFrame) -> None:
        """
        Container for the score file format: one row per stream with its
        id, conformance score (+inf allowed, written as 'inf'), and label.
        Empty labels are stored as ''.

        Parameters
        ----------
        df : pd.DataFrame
            Must have 'id', 'score', and 'label' columns.

        Raises
        ------
        ValueError
            Missing columns.
        DataError
            Scores must be numeric and cannot be NaN.

        """

        self._validate_columns(df)
        super().__init__(df[self._required_cols])

        scores = pd.to_numeric(self._df['score'], errors='coerce')
        if scores.isna().any():
            row = int(scores.isna().to_numpy().argmax()) + 1
            raise DataError(f"Scores must be numbers or 'inf', see data row"
                            f" {row}.")

        self._df['score'] = scores.astype(float)

    @classmethod
    def from_scores(cls, ids: Sequence, scores: npt.ArrayLike,
                    labels: Sequence | None = None) -> ScoreTable:
        """
        Build a table from parallel sequences.

        Parameters
        ----------
        ids : Sequence
            Stream ids.
        scores : ArrayLike
            Scores, same length as 'ids'.
        labels : Sequence or None, optional
            Stream labels. None (default) gives empty labels.

        Returns
        -------
        table : ScoreTable
            The new table.

        """
        scores = np.asarray(scores, dtype=float).ravel()
        if labels is None:
            labels = [''] * scores.size

        labels = ['' if label is None else label for label in labels]
        df = pd.DataFrame({'id': list(ids), 'score': scores, 'label': labels})

        return cls(df)

    @property
    def scores(self) -> np.ndarray:
        """Scores as a float array."""
        return self._df['score'].to_numpy(dtype=float)


class EcdfTable(RichTable):
    """Empirical CDF steps."""

    _required_cols = ['value', 'fraction']

    def __init__(self, df: pd.DataFrame) -> None:
        """
        Output container for `ecdf`. Each row is one step: the fraction of
        values less than or equal to 'value'. An infinite 'value' is the
        final step and holds the mass at +inf. Use `to_csv` to export the
        steps for external plotting.

        Parameters
        ----------
        df : pd.DataFrame
            Must have 'value' and 'fraction' columns.

        """
        super().__init__(df)
