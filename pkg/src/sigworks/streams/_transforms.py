from __future__ import annotations

from typing import Iterable

import numpy as np

from sigworks._core import Stream

TRANSFORMS = ('time', 'time-diff', 'lead-lag', 'invisibility')


def time_augment(s: Stream, parameterization: str = 'uniform') -> Stream:
    """
    Prepend a time coordinate.

    Parameters
    ----------
    s : Stream
        Input stream with `n` points of dimension `d`.
    parameterization : {'uniform', 'from-timestamps'}, optional
        With 'uniform' (default), point `i` gets time `i/(n - 1)` on [0, 1]
        (time 0 for a single point). With 'from-timestamps' the stream's own
        timestamps are used.

    Returns
    -------
    augmented : Stream
        Stream of dimension `d + 1` with points `(t_i, x_i)`. Timestamps are
        carried over unchanged.

    Raises
    ------
    ValueError
        Invalid 'parameterization'.
    ValueError
        'from-timestamps' requires a stream with timestamps.

    """

    valid = ['uniform', 'from-timestamps']
    if parameterization not in valid:
        raise ValueError(f"{parameterization=} is invalid; valid values are"
                         f" {valid}.")

    n = len(s)
    if parameterization == 'uniform':
        t = np.linspace(0., 1., n) if n > 1 else np.zeros(1)
    elif s.timestamps is None:
        raise ValueError("'from-timestamps' requires a stream with"
                         " timestamps.")
    else:
        t = s.timestamps

    return s.replace(np.column_stack([t, s.points]))


def time_diff_augment(s: Stream) -> Stream:
    """
    Prepend successive timestamp differences.

    Point 0 becomes `(0, x_0)` and point `i >= 1` becomes
    `(t_i - t_{i-1}, x_i)`.

    Parameters
    ----------
    s : Stream
        Input stream. Must have timestamps.

    Returns
    -------
    augmented : Stream
        Stream of dimension `d + 1` and the same length. Timestamps are
        carried over unchanged.

    Raises
    ------
    ValueError
        Stream has no timestamps.

    """

    if s.timestamps is None:
        raise ValueError("'time_diff_augment' requires a stream with"
                         " timestamps.")

    dt = np.diff(s.timestamps, prepend=s.timestamps[0])

    return s.replace(np.column_stack([dt, s.points]))


def lead_lag(s: Stream) -> Stream:
    """
    Lead-lag transformation.

    For an input of `m` points the output has `2m - 1` points in `2d`
    dimensions. Even index `2i` maps to `(x_i, x_i)` and odd index `2i + 1`
    maps to `(x_i, x_{i+1})`. Signatures of the output capture the quadratic
    variation of the input.

    Parameters
    ----------
    s : Stream
        Input stream.

    Returns
    -------
    transformed : Stream
        The lead-lag stream. Timestamps are dropped since the output index
        no longer matches the observation times.

    """

    doubled = np.repeat(s.points, 2, axis=0)
    points = np.hstack([doubled[:-1], doubled[1:]])

    return s.replace(points, timestamps=None)


def invisibility(s: Stream) -> Stream:
    """
    Invisibility reset transformation.

    Appends a visibility coordinate. The output starts at `(x_0, 0)` and then
    visits every input point with the flag raised, i.e., `(x_{i-1}, 1)` for
    `i = 1, ..., m` where `m` is the number of input points. The first
    increment lifts the flag at the starting position, which makes the
    absolute starting value visible to signatures.

    Parameters
    ----------
    s : Stream
        Input stream.

    Returns
    -------
    transformed : Stream
        Stream of dimension `d + 1` with `m + 1` points. Timestamps are
        dropped since the output has an extra point.

    """

    points = np.vstack([s.points[:1], s.points])
    flag = np.ones((points.shape[0], 1))
    flag[0] = 0.

    return s.replace(np.hstack([points, flag]), timestamps=None)


def apply_transforms(s: Stream, names: Iterable[str],
                     parameterization: str = 'uniform') -> Stream:
    """
    Apply several transforms in canonical order.

    Transforms are always composed as time, time-diff, lead-lag, then
    invisibility, regardless of the order given. Timestamps are consumed
    before lead-lag doubles the dimension, and the visibility flag is added
    last so that it is never duplicated.

    Parameters
    ----------
    s : Stream
        Input stream.
    names : Iterable[str]
        Subset of {'time', 'time-diff', 'lead-lag', 'invisibility'}.
    parameterization : {'uniform', 'from-timestamps'}, optional
        Passed to `time_augment`. The default is 'uniform'.

    Returns
    -------
    transformed : Stream
        The transformed stream. Returns 's' itself when 'names' is empty.

    Raises
    ------
    ValueError
        Unknown transform names.

    """

    names = canonical_transforms(names)

    if 'time' in names:
        s = time_augment(s, parameterization)
    if 'time-diff' in names:
        s = time_diff_augment(s)
    if 'lead-lag' in names:
        s = lead_lag(s)
    if 'invisibility' in names:
        s = invisibility(s)

    return s


def canonical_transforms(names: Iterable[str]) -> list[str]:
    """
    Validate transform names and sort them into application order.

    Parameters
    ----------
    names : Iterable[str]
        Transform names. Duplicates are collapsed.

    Returns
    -------
    names : list[str]
        Unique names in canonical order.

    Raises
    ------
    ValueError
        Unknown transform names.

    """

    if isinstance(names, str):
        names = [names]

    names = set(names)
    unknown = names - set(TRANSFORMS)
    if unknown:
        raise ValueError(f"Unknown transforms {sorted(unknown)}; valid values"
                         f" are {list(TRANSFORMS)}.")

    return [t for t in TRANSFORMS if t in names]


def transformed_dim(d: int, names: Iterable[str]) -> int:
    """Dimension of a `d`-dimensional stream after `apply_transforms`."""

    names = canonical_transforms(names)

    d += ('time' in names) + ('time-diff' in names)
    if 'lead-lag' in names:
        d *= 2
    if 'invisibility' in names:
        d += 1

    return d
