from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt


class Stream:
    """Stream of data."""

    __slots__ = ('_points', '_timestamps', 'id', 'label',)

    def __init__(self, points: npt.ArrayLike,
                 timestamps: npt.ArrayLike | None = None,
                 id: str | None = None, label: str | None = None) -> None:
        """
        An ordered sequence of `n` points in `d` dimensions, optionally with
        strictly increasing timestamps. Streams are the raw observation unit
        for every transform, signature, and conformance routine. The arrays
        are stored read-only so a stream can be shared between workers.

        Parameters
        ----------
        points : ArrayLike, shape(n, d) or shape(n,)
            Stream coordinates. A 1D input is treated as a univariate stream,
            i.e., reshaped to `(n, 1)`.
        timestamps : ArrayLike, shape(n,) or None, optional
            Observation times (in seconds). Must be strictly increasing. The
            default is None, i.e., no timestamps.
        id : str or None, optional
            Opaque instance identifier. The default is None.
        label : str or None, optional
            Optional class tag. The default is None.

        Raises
        ------
        ValueError
            'points' must be a 2D array with at least one point.
        ValueError
            'points' cannot contain non-finite values.
        ValueError
            'timestamps' length must match the number of points.
        ValueError
            'timestamps' must be strictly increasing.

        """

        points = np.array(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]

        if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
            raise ValueError(
                "'points' must be a 2D array with at least one point, got"
                f" shape={points.shape}."
            )

        if not np.all(np.isfinite(points)):
            raise ValueError("'points' cannot contain non-finite values.")

        if timestamps is not None:
            timestamps = np.array(timestamps, dtype=float).ravel()
            if timestamps.size != points.shape[0]:
                raise ValueError(
                    f"'timestamps' length ({timestamps.size}) must match the"
                    f" number of points ({points.shape[0]})."
                )
            if np.any(np.diff(timestamps) <= 0.):
                raise ValueError("'timestamps' must be strictly increasing.")

            timestamps.setflags(write=False)

        points.setflags(write=False)

        self._points = points
        self._timestamps = timestamps

        self.id = None if id is None else str(id)
        self.label = None if label is None else str(label)

    def __len__(self) -> int:
        return self._points.shape[0]

    def __repr__(self) -> str:
        timed = self._timestamps is not None
        return (
            f"Stream(id={self.id!r}, label={self.label!r}, n={len(self)},"
            f" dim={self.dim}, timestamps={timed})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Stream):
            return NotImplemented

        same_times = (
            (self._timestamps is None and other._timestamps is None)
            or (
                self._timestamps is not None
                and other._timestamps is not None
                and np.array_equal(self._timestamps, other._timestamps)
            )
        )

        return (
            self.id == other.id and self.label == other.label and same_times
            and np.array_equal(self._points, other._points)
        )

    @property
    def points(self) -> np.ndarray:
        """Read-only point array, shape(n, d)."""
        return self._points

    @property
    def timestamps(self) -> np.ndarray | None:
        """Read-only timestamps, shape(n,), or None."""
        return self._timestamps

    @property
    def dim(self) -> int:
        """Number of coordinates per point."""
        return self._points.shape[1]

    def replace(self, points: npt.ArrayLike | None = None,
                timestamps: npt.ArrayLike | None | str = 'keep') -> Stream:
        """
        Return a new stream with the same id and label.

        Parameters
        ----------
        points : ArrayLike or None, optional
            New points. If None (default), the current points are reused.
        timestamps : ArrayLike or None or 'keep', optional
            New timestamps. Use 'keep' (default) to carry the current ones
            over and None to drop them.

        Returns
        -------
        stream : Stream
            The new stream.

        """

        if points is None:
            points = self._points

        if isinstance(timestamps, str) and timestamps == 'keep':
            timestamps = self._timestamps

        return Stream(points, timestamps, id=self.id, label=self.label)

    def to_dict(self) -> dict:
        """
        Interchange record for this stream.

        Returns
        -------
        record : dict
            Keys 'id', 'label', 'timestamps', and 'points'. Missing values
            are stored as None.

        """
        timestamps = self._timestamps
        return {
            'id': self.id,
            'label': self.label,
            'timestamps': None if timestamps is None else timestamps.tolist(),
            'points': self._points.tolist(),
        }

    @classmethod
    def from_dict(cls, record: dict) -> Stream:
        """
        Build a stream from an interchange record.

        Parameters
        ----------
        record : dict
            Must have a 'points' key. 'id', 'label', and 'timestamps' are
            optional.

        Returns
        -------
        stream : Stream
            The parsed stream.

        Raises
        ------
        ValueError
            'record' is missing the required 'points' key.

        """

        if 'points' not in record:
            raise ValueError("'record' is missing the required 'points' key.")

        return cls(
            record['points'],
            timestamps=record.get('timestamps'),
            id=record.get('id'),
            label=record.get('label'),
        )


class NormalizationParams:
    """Min-Max normalization parameters."""

    __slots__ = ('_min', '_max', 'mode',)

    _modes = ('per-stream', 'corpus', 'none')

    def __init__(self, min: npt.ArrayLike | None = None,
                 max: npt.ArrayLike | None = None,
                 mode: str = 'per-stream') -> None:
        """
        Per-dimension extremes used by `min_max_normalize`. In 'per-stream'
        mode the extremes are recomputed from every stream, so `min` and `max`
        may be omitted. In 'corpus' mode they are fixed, typically computed
        with `corpus_normalization`. 'none' disables normalization.

        Parameters
        ----------
        min : ArrayLike or None, optional
            Per-dimension minimum values. Required in 'corpus' mode.
        max : ArrayLike or None, optional
            Per-dimension maximum values. Required in 'corpus' mode.
        mode : {'per-stream', 'corpus', 'none'}, optional
            Normalization mode. The default is 'per-stream'.

        Raises
        ------
        ValueError
            Invalid 'mode'.
        ValueError
            'min' and 'max' are required in 'corpus' mode.
        ValueError
            'min' and 'max' must have equal length with min <= max.

        """

        if mode not in self._modes:
            raise ValueError(f"{mode=} is invalid; valid values are"
                             f" {list(self._modes)}.")

        if mode == 'corpus' and (min is None or max is None):
            raise ValueError("'min' and 'max' are required in 'corpus' mode.")

        if min is not None or max is not None:
            min = np.array(min, dtype=float).ravel()
            max = np.array(max, dtype=float).ravel()

            if min.shape != max.shape:
                raise ValueError("'min' and 'max' must have equal length.")
            if np.any(min > max):
                raise ValueError("'min' must be <= 'max' in every dimension.")

            min.setflags(write=False)
            max.setflags(write=False)

        self._min = min
        self._max = max
        self.mode = mode

    def __repr__(self) -> str:
        return (
            f"NormalizationParams(mode={self.mode!r}, min={self._min},"
            f" max={self._max})"
        )

    @property
    def min(self) -> np.ndarray | None:
        """Per-dimension minimum values."""
        return self._min

    @property
    def max(self) -> np.ndarray | None:
        """Per-dimension maximum values."""
        return self._max

    def to_dict(self) -> dict:
        """Serializable form, used in model pipeline metadata."""
        return {
            'mode': self.mode,
            'min': None if self._min is None else self._min.tolist(),
            'max': None if self._max is None else self._max.tolist(),
        }

    @classmethod
    def from_dict(cls, record: dict) -> NormalizationParams:
        """Inverse of `to_dict`."""
        return cls(record.get('min'), record.get('max'), record['mode'])
