from __future__ import annotations

from typing import TYPE_CHECKING, Sequence
from collections import Counter

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from sigworks._core import Stream


class LabeledCorpus:
    """Labeled streams with train/test tags."""

    __slots__ = ('_streams', '_splits', 'normal_class', 'name',)

    _valid_splits = ('train', 'test')

    def __init__(self, streams: Sequence[Stream], splits: Sequence[str],
                 normal_class: str | None = None, name: str = '') -> None:
        """
        Container returned by the dataset loaders. Every stream carries a
        label and a split tag. `normal_class` names the label treated as
        normal in one-class experiments; loaders leave it as None and the
        experiment builders set it.

        Parameters
        ----------
        streams : Sequence[Stream]
            Labeled streams.
        splits : Sequence[str]
            One tag per stream, from {'train', 'test'}.
        normal_class : str or None, optional
            Label designating normal data. The default is None.
        name : str, optional
            Dataset name used in reports. The default is ''.

        Raises
        ------
        ValueError
            'streams' and 'splits' must have the same length.
        ValueError
            Invalid split tags or unlabeled streams.

        """

        streams, splits = list(streams), list(splits)
        if len(streams) != len(splits):
            raise ValueError("'streams' and 'splits' must have the same"
                             " length.")

        invalid = set(splits) - set(self._valid_splits)
        if invalid:
            raise ValueError(f"Invalid split tags {sorted(invalid)}; valid"
                             f" values are {list(self._valid_splits)}.")

        if any(s.label is None for s in streams):
            raise ValueError("Every stream in a 'LabeledCorpus' needs a"
                             " label.")

        self._streams = streams
        self._splits = splits
        self.normal_class = normal_class
        self.name = name

    def __len__(self) -> int:
        return len(self._streams)

    def __iter__(self):
        return iter(self._streams)

    def __getitem__(self, index: int) -> Stream:
        return self._streams[index]

    def __repr__(self) -> str:
        counts = Counter(self._splits)
        return (
            f"LabeledCorpus(name={self.name!r}, train={counts['train']},"
            f" test={counts['test']}, classes={len(self.classes)})"
        )

    @property
    def streams(self) -> list[Stream]:
        """All streams, in load order."""
        return list(self._streams)

    @property
    def splits(self) -> np.ndarray:
        """Split tag per stream."""
        return np.array(self._splits, dtype=object)

    @property
    def labels(self) -> np.ndarray:
        """Class label per stream."""
        return np.array([s.label for s in self._streams], dtype=object)

    @property
    def classes(self) -> list[str]:
        """Sorted unique labels."""
        return sorted(set(s.label for s in self._streams))

    def select(self, split: str | None = None,
               label: str | None = None) -> list[Stream]:
        """
        Streams filtered by split tag and/or label.

        Parameters
        ----------
        split : {'train', 'test'} or None, optional
            Keep only this split. None (default) keeps both.
        label : str or None, optional
            Keep only this label. None (default) keeps all labels.

        Returns
        -------
        streams : list[Stream]
            Matching streams in load order.

        """
        return [
            s for s, tag in zip(self._streams, self._splits)
            if (split is None or tag == split)
            and (label is None or s.label == label)
        ]

    def counts(self, split: str | None = None) -> dict[str, int]:
        """Number of streams per label, optionally within one split."""
        counts = Counter(s.label for s in self.select(split))
        return {label: counts[label] for label in sorted(counts)}
