from __future__ import annotations

from typing import Sequence

import numpy as np

from sigworks._core import Stream, NormalizationParams


def min_max_normalize(s: Stream, params: NormalizationParams | None = None,
                      joint: bool = False) -> Stream:
    """
    Min-Max normalization.

    Coordinate `j` maps to `(x_j - min_j) / (max_j - min_j)`. Dimensions with
    `max_j == min_j` carry no increment information and map to 0.

    Parameters
    ----------
    s : Stream
        Input stream.
    params : NormalizationParams or None, optional
        Normalization parameters. In 'per-stream' mode (also used when None,
        the default) the extremes are recomputed from 's'. In 'corpus' mode
        the stored extremes are used and outputs may fall outside [0, 1].
        In 'none' mode 's' is returned unchanged.
    joint : bool, optional
        If True, every dimension is divided by the largest per-dimension
        range, which preserves aspect ratios. The default is False.

    Returns
    -------
    normalized : Stream
        The normalized stream, timestamps carried over.

    Raises
    ------
    ValueError
        Stored extremes do not match the stream dimension.

    """

    if params is None:
        params = NormalizationParams(mode='per-stream')

    if params.mode == 'none':
        return s

    if params.mode == 'per-stream':
        lo, hi = s.points.min(axis=0), s.points.max(axis=0)
    else:
        lo, hi = params.min, params.max
        if lo.size != s.dim:
            raise ValueError(
                f"Normalization parameters have {lo.size} dimensions but the"
                f" stream has {s.dim}."
            )

    span = hi - lo
    if joint:
        span = np.full_like(span, span.max())

    scale = np.divide(1., span, out=np.zeros_like(span), where=span > 0.)
    points = (s.points - lo)*scale

    return s.replace(points)


def corpus_normalization(streams: Sequence[Stream]) -> NormalizationParams:
    """
    Normalization parameters from corpus extremes.

    Parameters
    ----------
    streams : Sequence[Stream]
        Corpus streams, all with the same dimension.

    Returns
    -------
    params : NormalizationParams
        'corpus' mode parameters with per-dimension extremes taken over every
        point of every stream.

    Raises
    ------
    ValueError
        'streams' cannot be empty.
    ValueError
        Streams must all have the same dimension.

    """

    if len(streams) == 0:
        raise ValueError("'streams' cannot be empty.")

    dims = {s.dim for s in streams}
    if len(dims) > 1:
        raise ValueError(f"Streams must all have the same dimension, got"
                         f" {sorted(dims)}.")

    lo = np.min([s.points.min(axis=0) for s in streams], axis=0)
    hi = np.max([s.points.max(axis=0) for s in streams], axis=0)

    return NormalizationParams(lo, hi, mode='corpus')
