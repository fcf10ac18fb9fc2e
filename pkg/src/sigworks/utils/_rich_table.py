from __future__ import annotations

from typing import TYPE_CHECKING

import pandas as pd

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike
    from typing import Any, Self, Sequence


class RichTable:
    """DataFrame-like results container."""

    _required_cols: Sequence[str] = []
    _text_cols: Sequence[str] = []

    def __init__(self, df: pd.DataFrame) -> None:
        """
        Wraps a `pd.DataFrame` and checks it for required columns. Columns
        read like attributes, e.g., `table.score`. Score files, ECDF exports,
        and experiment results are all subclasses.

        Subclasses list their columns in `_required_cols`, extra columns are
        kept. Columns in `_text_cols` are always stored as strings, with
        missing entries as ''. Ids such as '007' therefore survive a trip
        through `to_csv` and `from_csv`.

        The wrapped frame is copied on input. It can be changed in place
        through the `df` property, but never replaced.

        Parameters
        ----------
        df : pd.DataFrame
            Input data, copied on storage.

        Raises
        ------
        ValueError
            A required column is missing.

        Examples
        --------
        .. code-block:: python

            import pandas as pd
            from sigworks.utils import RichTable

            class DistanceTable(RichTable):
                _required_cols = ['id', 'distance']
                _text_cols = ['id']

            df = pd.DataFrame({'id': [1, 2], 'distance': [0.5, 2.]})
            table = DistanceTable(df)
            print(table.id.tolist())  # ['1', '2']

        """
        self._validate_columns(df)

        df = df.copy()
        for col in self._text_cols:
            if col in df.columns:
                df[col] = df[col].where(df[col].notna(), '').astype(str)

        object.__setattr__(self, '_df', df)

    def __getitem__(self, key: str | list[str]) -> pd.Series | pd.DataFrame:
        return self._df[key]

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError(f"Cannot set attribute {name}. Use 'df' to"
                             " modify columns.")

    def __getattr__(self, name: str) -> pd.Series:
        """Provide attribute-style access to columns."""
        df = object.__getattribute__(self, '_df')
        if name in df.columns:
            return df[name]
        raise AttributeError(name)

    def __len__(self) -> int:
        return len(self._df)

    def __repr__(self) -> str:
        return repr(self._df)

    @classmethod
    def _validate_columns(cls, df: pd.DataFrame) -> None:
        missing = [c for c in cls._required_cols if c not in df.columns]
        if missing:
            raise ValueError(f"Missing required columns {missing}.")

    @property
    def df(self) -> pd.DataFrame:
        """The underlying DataFrame stored in the container."""
        return self._df

    @classmethod
    def from_csv(cls, path: str | PathLike) -> Self:
        """
        Read a table written by `to_csv`.

        Text columns are read verbatim and floats are parsed with round-trip
        precision, so re-writing a table gives identical bytes.

        Parameters
        ----------
        path : str or PathLike
            Path to a comma-separated file with a header row.

        Returns
        -------
        table : Self
            A new instance initialized with data from the file.

        Raises
        ------
        pd.errors.EmptyDataError
            The file has no header row.
        ValueError
            A required column is missing.

        """
        df = pd.read_csv(path, dtype={col: str for col in cls._text_cols},
                         keep_default_na=False, na_values=[''],
                         float_precision='round_trip')
        return cls(df)

    def to_csv(self, path: str | PathLike) -> None:
        """
        Write the table to a comma-separated file, without the index.

        Floats are written at full precision and infinities as 'inf'. Line
        endings are always '\\n'.

        Parameters
        ----------
        path : str or PathLike
            Path to the output file. Existing files are overwritten.

        """
        self._df.to_csv(path, index=False, lineterminator='\n')

    def copy(self) -> Self:
        """
        Returns a copy of the instance.

        Returns
        -------
        table : Self
            New instance of the same class, built from a copy of `df`.

        """
        return type(self)(self._df)
