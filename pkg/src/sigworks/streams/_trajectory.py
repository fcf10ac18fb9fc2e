from __future__ import annotations

import numpy as np

from sigworks._core import Stream
from ._distance import get_distance


def compress(s: Stream, threshold_m: float,
             distance: str = 'euclidean') -> Stream:
    """
    Drop positions that barely move.

    The first point is always retained. Each subsequent point is retained
    only if its distance to the last retained point strictly exceeds
    'threshold_m'. Compression is idempotent.

    Parameters
    ----------
    s : Stream
        Input trajectory.
    threshold_m : float
        Retention threshold, in the units of 'distance' (meters for
        'haversine'). Must be nonnegative.
    distance : {'euclidean', 'haversine'}, optional
        Distance between points. 'haversine' requires 2D (latitude,
        longitude) streams. The default is 'euclidean'.

    Returns
    -------
    compressed : Stream
        The retained points, with their timestamps.

    Raises
    ------
    ValueError
        'threshold_m' must be nonnegative.
    ValueError
        'haversine' requires 2D streams.

    """

    if threshold_m < 0.:
        raise ValueError(f"'threshold_m' must be nonnegative, got"
                         f" {threshold_m=}.")

    dist = get_distance(distance, s.dim)

    points = s.points
    keep = [0]
    for i in range(1, len(s)):
        if dist(points[keep[-1]], points[i]) > threshold_m:
            keep.append(i)

    if len(keep) == len(s):
        return s

    timestamps = None if s.timestamps is None else s.timestamps[keep]

    return s.replace(points[keep], timestamps=timestamps)


def disintegrate(s: Stream, segment_len_m: float, max_gap_m: float,
                 distance: str = 'euclidean',
                 measure: str = 'path') -> list[Stream]:
    """
    Cut a trajectory into sub-streams of fixed length.

    Scans the stream and emits a sub-stream each time the accumulated
    length first reaches 'segment_len_m', then restarts accumulation at that
    cut point, which is shared by consecutive sub-streams. Cuts happen at
    existing sample points, so sub-stream lengths are at least
    'segment_len_m' but never interpolated to it exactly. A trailing
    remainder shorter than 'segment_len_m' is discarded, as is any emitted
    sub-stream with a successive-point gap of at least 'max_gap_m'.

    Parameters
    ----------
    s : Stream
        Input trajectory.
    segment_len_m : float
        Target sub-stream length. Must be positive.
    max_gap_m : float
        Largest allowed step within a sub-stream (exclusive). Must be
        positive.
    distance : {'euclidean', 'haversine'}, optional
        Distance between points. The default is 'euclidean'.
    measure : {'path', 'displacement'}, optional
        How sub-stream length is measured. 'path' (default) accumulates
        point-to-point distances. 'displacement' uses the straight-line
        distance from the sub-stream's first point.

    Returns
    -------
    substreams : list[Stream]
        Emitted sub-streams in order. Ids are suffixed with the sub-stream
        number, e.g., 'vessel-3'.

    Raises
    ------
    ValueError
        'segment_len_m' and 'max_gap_m' must be positive.
    ValueError
        Invalid 'measure'.

    """

    if segment_len_m <= 0. or max_gap_m <= 0.:
        raise ValueError("'segment_len_m' and 'max_gap_m' must be positive.")

    valid = ['path', 'displacement']
    if measure not in valid:
        raise ValueError(f"{measure=} is invalid; valid values are {valid}.")

    dist = get_distance(distance, s.dim)

    points = s.points
    steps = np.atleast_1d(dist(points[:-1], points[1:])) if len(s) > 1 \
        else np.zeros(0)

    substreams = []
    start, length = 0, 0.
    for i in range(1, len(s)):
        if measure == 'path':
            length += steps[i - 1]
        else:
            length = dist(points[start], points[i])

        if length < segment_len_m:
            continue

        if steps[start:i].max() < max_gap_m:
            timestamps = None
            if s.timestamps is not None:
                timestamps = s.timestamps[start:i + 1]

            sub = s.replace(points[start:i + 1], timestamps=timestamps)
            if s.id is not None:
                sub.id = f"{s.id}-{len(substreams)}"

            substreams.append(sub)

        start, length = i, 0.

    return substreams
