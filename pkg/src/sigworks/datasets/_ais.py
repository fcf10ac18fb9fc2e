from __future__ import annotations

import logging

from typing import TYPE_CHECKING, Sequence
from warnings import warn

import numpy as np

from sigworks._core import Stream, DataError
from sigworks.streams import haversine, compress, disintegrate
from ._tables import AISExperiment

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

logger = logging.getLogger(__name__)

AIS_COLUMNS = {
    'vessel_id': 'MMSI',
    'timestamp': 'BaseDateTime',
    'latitude': 'LAT',
    'longitude': 'LON',
    'length': 'Length',
}

NORMAL_MIN_LENGTH_M = 100.
ANOMALY_MAX_LENGTH_M = 50.


class VesselRecord:
    """Positions reported by one vessel."""

    __slots__ = ('vessel_id', 'positions', 'length_m',)

    def __init__(self, vessel_id: str, positions: Stream,
                 length_m: float) -> None:
        """
        One vessel's track as a 2D stream of (latitude, longitude) degrees
        with timestamps in seconds, plus its reported length.

        Parameters
        ----------
        vessel_id : str
            Vessel identifier (MMSI).
        positions : Stream
            Timestamped positions, strictly increasing in time.
        length_m : float
            Reported vessel length in meters. Must be positive.

        Raises
        ------
        ValueError
            'positions' must be a timestamped 2D stream with valid
            coordinates.
        ValueError
            'length_m' must be positive.

        """

        if positions.dim != 2 or positions.timestamps is None:
            raise ValueError("'positions' must be a timestamped 2D stream.")

        lat, lon = positions.points.T
        if np.any(np.abs(lat) > 90.) or np.any(np.abs(lon) > 180.):
            raise ValueError("Latitudes must be in [-90, 90] and longitudes"
                             " in [-180, 180].")

        if not length_m > 0.:
            raise ValueError(f"'length_m' must be positive, got {length_m=}.")

        self.vessel_id = str(vessel_id)
        self.positions = positions
        self.length_m = float(length_m)

    def __repr__(self) -> str:
        return (
            f"VesselRecord(vessel_id={self.vessel_id!r},"
            f" n_positions={len(self.positions)}, length_m={self.length_m})"
        )


def load_ais(filepath: PathLike, columns: dict[str, str] | None = None,
             return_stats: bool = False) -> list[VesselRecord]:
    """
    Load pre-decoded AIS position reports.

    Rows without a vessel id are dropped. Next, vessels with a missing or
    non-positive length on any row are excluded entirely, whether or not
    that row has a valid position. Of the remaining rows, those with
    unparseable or out-of-range coordinates or timestamps are dropped and
    counted, and a warning reports the count. Each vessel's rows are sorted
    by time and repeated timestamps keep their first row.

    Parameters
    ----------
    filepath : PathLike
        Comma-separated file with a header row.
    columns : dict[str, str] or None, optional
        Maps 'vessel_id', 'timestamp', 'latitude', 'longitude', and 'length'
        to file column names. Missing keys use the defaults in `AIS_COLUMNS`.
    return_stats : bool, optional
        If True, also return a dict of row and vessel counts. The default is
        False.

    Returns
    -------
    records : list[VesselRecord]
        One record per retained vessel, sorted by vessel id.
    stats : dict[str, int]
        Only returned if 'return_stats' is True. Keys are 'rows',
        'rows_without_id', 'rows_invalid', 'vessels_invalid_length', and
        'vessels'.

    Raises
    ------
    DataError
        Missing columns in the file.

    """
    import pandas as pd

    names = {**AIS_COLUMNS, **(columns or {})}

    df = pd.read_csv(filepath, dtype={names['vessel_id']: str})

    missing = set(names.values()) - set(df.columns)
    if missing:
        raise DataError(f"{filepath} is missing columns {sorted(missing)}.")

    df = df[list(names.values())].rename(columns={v: k for k, v in
                                                  names.items()})

    stats = {'rows': len(df)}

    vessel_id = df['vessel_id'].astype('string').str.strip()
    has_id = vessel_id.notna() & (vessel_id != '')
    stats['rows_without_id'] = int((~has_id).sum())

    df = df.loc[has_id].assign(vessel_id=vessel_id[has_id])

    # length is judged on every row of a vessel, invalid positions included
    length = pd.to_numeric(df['length'], errors='coerce')
    bad_length = (length.isna() | (length <= 0.)).groupby(df['vessel_id'])
    bad_vessels = bad_length.any()
    stats['vessels_invalid_length'] = int(bad_vessels.sum())

    keep = ~df['vessel_id'].map(bad_vessels).astype(bool)
    df = df.loc[keep].assign(length=length[keep])

    timestamp = pd.to_datetime(df['timestamp'], errors='coerce', utc=True)
    lat = pd.to_numeric(df['latitude'], errors='coerce')
    lon = pd.to_numeric(df['longitude'], errors='coerce')

    valid = timestamp.notna() & lat.between(-90., 90.) \
        & lon.between(-180., 180.)
    stats['rows_invalid'] = int((~valid).sum())

    if stats['rows_invalid']:
        warn(f"Dropped {stats['rows_invalid']} AIS rows with invalid"
             " coordinates or timestamps.")

    epoch = pd.Timestamp(0, tz='UTC')
    df = df.loc[valid].assign(
        seconds=(timestamp[valid] - epoch).dt.total_seconds(),
        latitude=lat[valid],
        longitude=lon[valid],
    )

    records = []
    for vid, group in df.groupby('vessel_id', sort=True):
        group = group.sort_values('seconds', kind='stable')
        group = group.drop_duplicates('seconds', keep='first')

        positions = Stream(group[['latitude', 'longitude']].to_numpy(),
                           timestamps=group['seconds'].to_numpy(), id=vid)

        length = group['length'].median()
        records.append(VesselRecord(vid, positions, length))

    stats = {key: stats[key] for key in ('rows', 'rows_without_id',
                                         'rows_invalid',
                                         'vessels_invalid_length')}
    stats['vessels'] = len(records)

    logger.info("Loaded %d vessels from %d rows", len(records), stats['rows'])

    if return_stats:
        return records, stats

    return records


def build_ais_experiment(records: Sequence[VesselRecord], segment_m: float,
                         compress_m: float = 10.,
                         min_displacement_m: float = 5000.,
                         max_gap_m: float = 1000., sample_size: int = 5000,
                         measure: str = 'path',
                         seed: int = 0) -> AISExperiment:
    """
    Vessel-traffic anomaly detection partition.

    Every track is compressed, kept only if its start-to-end displacement
    exceeds 'min_displacement_m', and disintegrated into sub-streams of
    length 'segment_m'. Vessels longer than 100 m are normal and vessels of
    at most 50 m are anomalous; vessels in between are excluded. Normal
    vessels are split in half at the vessel level, the first half (plus the
    extra vessel when odd) forming the corpus. Each of the three subsets is
    then sampled with `weighted_sample`, weighting every sub-stream by the
    inverse of its vessel's sub-stream count. Draws are without replacement
    when a subset has at least 'sample_size' sub-streams.

    Parameters
    ----------
    records : Sequence[VesselRecord]
        Vessel tracks, e.g., from `load_ais` or `make_trajectories`.
    segment_m : float
        Sub-stream length in meters.
    compress_m : float, optional
        Compression threshold in meters. The default is 10.
    min_displacement_m : float, optional
        Minimum start-to-end displacement in meters. The default is 5000.
    max_gap_m : float, optional
        Sub-streams with a step of at least this many meters are dropped.
        The default is 1000.
    sample_size : int, optional
        Sub-streams sampled per subset. The default is 5000.
    measure : {'path', 'displacement'}, optional
        Sub-stream length measure, see `disintegrate`. The default is 'path'.
    seed : int, optional
        Seed for the vessel split and the weighted samples. The default is 0.

    Returns
    -------
    experiment : AISExperiment
        Corpus, normal test, and anomaly test sub-streams, each with
        timestamps in seconds.

    Raises
    ------
    DataError
        Fewer than two normal vessels or no anomalous vessel with
        sub-streams.

    """

    normal, anomalous = [], []
    for record in records:
        length = record.length_m
        if ANOMALY_MAX_LENGTH_M < length <= NORMAL_MIN_LENGTH_M:
            continue

        track = compress(record.positions, compress_m, 'haversine')
        points = track.points
        if not haversine(points[0], points[-1]) > min_displacement_m:
            continue

        pieces = disintegrate(track, segment_m, max_gap_m, 'haversine',
                              measure)
        if not pieces:
            continue

        if length > NORMAL_MIN_LENGTH_M:
            normal.append(pieces)
        else:
            anomalous.append(pieces)

    if len(normal) < 2 or not anomalous:
        raise DataError(f"Need at least 2 normal and 1 anomalous vessel with"
                        f" sub-streams, found {len(normal)} and"
                        f" {len(anomalous)}.")

    rng = np.random.default_rng(seed)

    order = rng.permutation(len(normal))
    n_corpus = len(normal) - len(normal) // 2

    corpus_vessels = [normal[i] for i in order[:n_corpus]]
    test_vessels = [normal[i] for i in order[n_corpus:]]

    logger.info("AIS vessels: %d corpus, %d normal test, %d anomalous",
                len(corpus_vessels), len(test_vessels), len(anomalous))

    return AISExperiment(
        segment_m=float(segment_m),
        n_corpus_vessels=len(corpus_vessels),
        n_test_vessels=len(test_vessels),
        n_anomaly_vessels=len(anomalous),
        corpus=weighted_sample(corpus_vessels, sample_size, rng),
        normal_test=weighted_sample(test_vessels, sample_size, rng),
        anomaly_test=weighted_sample(anomalous, sample_size, rng),
    )


def weighted_sample(groups: Sequence[Sequence[Stream]], size: int,
                    rng: np.random.Generator) -> list[Stream]:
    """
    Sample streams so every group is equally likely.

    Draws are without replacement whenever the pool holds at least 'size'
    streams, so a large pool gives 'size' distinct streams. Smaller pools
    are drawn with replacement.

    Parameters
    ----------
    groups : Sequence[Sequence[Stream]]
        Nonempty groups of streams, e.g., the sub-streams of each vessel.
    size : int
        Number of draws.
    rng : np.random.Generator
        Random generator.

    Returns
    -------
    sample : list[Stream]
        Drawn streams. Each draw picks a stream with probability
        proportional to `1 / len(group)`, renormalized over the streams not
        yet drawn when sampling without replacement.

    """

    pool = [s for group in groups for s in group]
    weights = np.concatenate([np.full(len(g), 1. / len(g)) for g in groups])

    index = rng.choice(len(pool), size=size, replace=len(pool) < size,
                       p=weights / weights.sum())

    return [pool[i] for i in index]
