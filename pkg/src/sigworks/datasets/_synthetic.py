from __future__ import annotations

import numpy as np

from sigworks._core import Stream
from sigworks.streams._distance import EARTH_RADIUS_M
from ._ais import VesselRecord

JAN_2017 = 1483228800.  # epoch seconds

AREA_RADIUS_M = 4000.
WAYPOINT_REACHED_M = 1200.
END_DISPLACEMENT_M = 6000.


def make_trajectories(n_normal: int = 40, n_anomalous: int = 40,
                      hours: float = 12., seed: int = 0,
                      origin: tuple[float, float] = (27.5, -80.)
                      ) -> list[VesselRecord]:
    """
    Synthetic vessel tracks.

    Every vessel cruises between random waypoints inside a home area of 4 km
    radius, starting on its edge. Home areas lie within about 1 km of
    'origin', so the whole fleet shares a region only a few times wider
    than a short sub-stream.

    Large vessels report every 45-80 s and steer smoothly, turning at most
    35 degrees per report, at a steady 8-10 m/s. Small vessels report every
    5-25 s, change speed between 1 and 6 m/s at every report, and zigzag
    +/- 50 degrees around their course every four reports. Tracks end at
    the last position that is more than 6 km from the start, so every
    vessel passes the 5 km displacement filter of `build_ais_experiment`.

    Parameters
    ----------
    n_normal : int, optional
        Number of large (normal) vessels, length 120-300 m. The default is
        40.
    n_anomalous : int, optional
        Number of small (anomalous) vessels, length 10-50 m. The default is
        40.
    hours : float, optional
        Observation period per vessel, before the track is cut at its last
        distant position. The default is 12, which gives about 90
        sub-streams of 4 km per large vessel and 35 per small vessel.
    seed : int, optional
        Random seed. The default is 0.
    origin : tuple[float, float], optional
        Center (latitude, longitude) of the home areas. The default is
        (27.5, -80).

    Returns
    -------
    records : list[VesselRecord]
        Normal vessels first, with ids 'normal-0', ..., then 'small-0', ...

    Raises
    ------
    ValueError
        'hours' must be positive.

    """

    if hours <= 0.:
        raise ValueError(f"'hours' must be positive, got {hours=}.")

    rng = np.random.default_rng(seed)
    duration = 3600.*hours

    records = []
    for i in range(n_normal):
        dt = rng.uniform(45., 80., int(duration / 62.5))
        speed = rng.uniform(8., 10.)*rng.normal(1., 0.05, dt.size)
        length = rng.uniform(120., 300.)

        track = _cruise(speed*dt, np.zeros(dt.size), np.deg2rad(35.), rng)

        records.append(_record(f"normal-{i}", track, dt, length, origin,
                               rng))

    for i in range(n_anomalous):
        dt = rng.uniform(5., 25., int(duration / 15.))
        speed = rng.uniform(1., 6., dt.size)
        swing = np.where(np.arange(dt.size) // 4 % 2, 1., -1.)
        length = rng.uniform(10., 50.)

        track = _cruise(speed*dt, np.deg2rad(50.)*swing, np.deg2rad(60.),
                        rng)

        records.append(_record(f"small-{i}", track, dt, length, origin,
                               rng))

    return records


def _cruise(steps: np.ndarray, swing: np.ndarray, max_turn: float,
            rng: np.random.Generator) -> np.ndarray:
    """East/north positions, in meters from the home center."""

    def waypoint():
        r = AREA_RADIUS_M*np.sqrt(rng.uniform())
        a = rng.uniform(0., 2.*np.pi)
        return r*np.array([np.sin(a), np.cos(a)])

    start = rng.uniform(0., 2.*np.pi)
    position = AREA_RADIUS_M*np.array([np.sin(start), np.cos(start)])

    # first leg crosses the area, so the track gets over 6 km from its start
    course = rng.uniform(0., 2.*np.pi)
    target, travelled = -0.9*position, 0.
    noise = rng.normal(0., np.deg2rad(8.), steps.size)

    track = np.empty((steps.size + 1, 2))
    track[0] = position
    for k, step in enumerate(steps):

        # legs also end after 16 km, e.g., when circling a close waypoint
        east, north = target - position
        if np.hypot(east, north) < WAYPOINT_REACHED_M \
                or travelled > 4.*AREA_RADIUS_M:
            target, travelled = waypoint(), 0.
            east, north = target - position

        turn = (np.arctan2(east, north) - course + np.pi) % (2.*np.pi) - np.pi
        course += np.clip(turn, -max_turn, max_turn) + noise[k]
        travelled += step

        heading = course + swing[k]
        position = position + step*np.array([np.sin(heading), np.cos(heading)])
        track[k + 1] = position

    return track


def _record(vessel_id: str, track: np.ndarray, dt: np.ndarray,
            length: float, origin: tuple[float, float],
            rng: np.random.Generator) -> VesselRecord:

    timestamps = JAN_2017 + np.r_[0., np.cumsum(dt)]

    far = np.flatnonzero(np.hypot(*(track - track[0]).T) > END_DISPLACEMENT_M)
    if far.size:
        track, timestamps = track[:far[-1] + 1], timestamps[:far[-1] + 1]

    lat0 = origin[0] + rng.uniform(-0.01, 0.01)
    lon0 = origin[1] + rng.uniform(-0.01, 0.01)

    # local east/north displacements, then degrees on a spherical earth
    east, north = track.T
    lat = lat0 + np.rad2deg(north / EARTH_RADIUS_M)
    lon = lon0 + np.rad2deg(east / (EARTH_RADIUS_M*np.cos(np.deg2rad(lat))))

    positions = Stream(np.column_stack([lat, lon]), timestamps, id=vessel_id)

    return VesselRecord(vessel_id, positions, length)
