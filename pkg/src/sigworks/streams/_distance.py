from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

EARTH_RADIUS_M = 6_371_000.


def haversine(p: npt.ArrayLike, q: npt.ArrayLike) -> float | np.ndarray:
    """
    Great-circle distance between (latitude, longitude) positions.

    Parameters
    ----------
    p : ArrayLike, shape(..., 2)
        First position(s) in degrees, as (latitude, longitude).
    q : ArrayLike, shape(..., 2)
        Second position(s) in degrees. Broadcast against 'p'.

    Returns
    -------
    meters : float or np.ndarray
        Distance(s) in meters on a sphere with the mean Earth radius of
        6 371 000 m.

    Raises
    ------
    ValueError
        Positions must have a trailing dimension of size 2.
    ValueError
        Latitudes must be in [-90, 90] and longitudes in [-180, 180].

    """

    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)

    for pos in (p, q):
        if pos.shape[-1:] != (2,):
            raise ValueError("Positions must have a trailing dimension of"
                             f" size 2, got shape={pos.shape}.")
        if np.any(np.abs(pos[..., 0]) > 90.):
            raise ValueError("Latitudes must be in [-90, 90].")
        if np.any(np.abs(pos[..., 1]) > 180.):
            raise ValueError("Longitudes must be in [-180, 180].")

    lat1, lon1 = np.deg2rad(p[..., 0]), np.deg2rad(p[..., 1])
    lat2, lon2 = np.deg2rad(q[..., 0]), np.deg2rad(q[..., 1])

    a = np.sin((lat2 - lat1)/2.)**2 \
        + np.cos(lat1)*np.cos(lat2)*np.sin((lon2 - lon1)/2.)**2

    meters = 2.*EARTH_RADIUS_M*np.arcsin(np.sqrt(np.clip(a, 0., 1.)))

    return float(meters) if meters.ndim == 0 else meters


def euclidean(p: npt.ArrayLike, q: npt.ArrayLike) -> float | np.ndarray:
    """
    Euclidean distance over the trailing dimension.

    Parameters
    ----------
    p : ArrayLike, shape(..., d)
        First point(s).
    q : ArrayLike, shape(..., d)
        Second point(s). Broadcast against 'p'.

    Returns
    -------
    distance : float or np.ndarray
        Distance(s) in the units of the coordinates.

    """

    diff = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    distance = np.sqrt(np.sum(diff**2, axis=-1))

    return float(distance) if distance.ndim == 0 else distance


def get_distance(name: str, dim: int) -> Callable:
    """
    Look up a distance function by name and check it fits the dimension.

    Parameters
    ----------
    name : {'haversine', 'euclidean'}
        Distance name.
    dim : int
        Stream dimension. 'haversine' requires `dim == 2`.

    Returns
    -------
    distance : Callable
        The distance function.

    Raises
    ------
    ValueError
        Invalid 'name'.
    ValueError
        'haversine' requires 2D (latitude, longitude) streams.

    """

    distances = {'haversine': haversine, 'euclidean': euclidean}
    if name not in distances:
        raise ValueError(f"distance={name!r} is invalid; valid values are"
                         f" {list(distances)}.")

    if name == 'haversine' and dim != 2:
        raise ValueError("'haversine' requires 2D (latitude, longitude)"
                         f" streams, got {dim=}.")

    return distances[name]
