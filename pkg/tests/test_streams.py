import json

import pytest
import numpy as np
import sigworks as sw

from sigworks.streams import (
    time_augment, time_diff_augment, lead_lag, invisibility,
    apply_transforms, canonical_transforms, transformed_dim,
    min_max_normalize, corpus_normalization, haversine, euclidean,
    compress, disintegrate,
)


@pytest.fixture
def timed():
    return sw.Stream([[0., 1.], [2., 3.], [5., 4.]], timestamps=[0., 2., 5.],
                     id='s', label='a')


def test_stream_init():

    s = sw.Stream([1., 2., 3.])  # 1D means univariate
    assert s.points.shape == (3, 1)
    assert s.dim == 1 and len(s) == 3
    assert s.timestamps is None and s.id is None

    with pytest.raises(ValueError):
        s.points[0, 0] = 10.

    with pytest.raises(ValueError):
        _ = sw.Stream(np.zeros((0, 2)))

    with pytest.raises(ValueError):
        _ = sw.Stream([[0., np.nan]])

    with pytest.raises(ValueError):
        _ = sw.Stream([[0.], [1.]], timestamps=[0.])

    with pytest.raises(ValueError):
        _ = sw.Stream([[0.], [1.]], timestamps=[1., 1.])

    s = sw.Stream([[0.]], id=7, label=3)
    assert s.id == '7' and s.label == '3'


def test_stream_replace(timed):

    same = timed.replace()
    assert same == timed and same is not timed

    moved = timed.replace(timed.points + 1.)
    assert np.array_equal(moved.timestamps, timed.timestamps)
    assert moved.id == 's' and moved.label == 'a'

    untimed = timed.replace(timestamps=None)
    assert untimed.timestamps is None


def test_stream_records(timed):

    record = timed.to_dict()
    assert set(record) == {'id', 'label', 'timestamps', 'points'}
    assert sw.Stream.from_dict(record) == timed

    s = sw.Stream.from_dict({'points': [[1., 2.]]})
    assert s.id is None and s.label is None and s.timestamps is None

    with pytest.raises(ValueError):
        _ = sw.Stream.from_dict({'id': 'x'})


def test_read_write_streams(tmp_path, timed):

    filepath = tmp_path / 'streams.jsonl'

    streams = [timed, sw.Stream([[1.], [2.]], id='u')]
    assert sw.write_streams(filepath, streams) == 2
    assert sw.read_streams(filepath) == streams

    # blank lines are skipped
    with open(filepath, 'a') as f:
        f.write('\n\n')
    assert len(sw.read_streams(filepath)) == 2

    empty = tmp_path / 'empty.jsonl'
    empty.write_text('')
    assert sw.read_streams(empty) == []

    bad = tmp_path / 'bad.jsonl'
    bad.write_text(json.dumps(timed.to_dict()) + '\n{"points": [[1, "x"]]}\n')
    with pytest.raises(sw.DataError, match='line 2'):
        _ = sw.read_streams(bad)


def test_normalization_params():

    params = sw.NormalizationParams(mode='per-stream')
    assert params.min is None and params.max is None

    with pytest.raises(ValueError):
        _ = sw.NormalizationParams(mode='fake')

    with pytest.raises(ValueError):
        _ = sw.NormalizationParams(mode='corpus')

    with pytest.raises(ValueError):
        _ = sw.NormalizationParams([0., 2.], [1., 1.], mode='corpus')

    params = sw.NormalizationParams([0., -1.], [1., 1.], mode='corpus')
    copy = sw.NormalizationParams.from_dict(params.to_dict())
    assert copy.mode == 'corpus'
    assert np.array_equal(copy.min, params.min)
    assert np.array_equal(copy.max, params.max)


def test_time_augment(timed):

    s = time_augment(timed)
    assert s.dim == 3
    assert np.allclose(s.points[:, 0], [0., 0.5, 1.])
    assert np.array_equal(s.points[:, 1:], timed.points)
    assert np.array_equal(s.timestamps, timed.timestamps)

    s = time_augment(timed, 'from-timestamps')
    assert np.array_equal(s.points[:, 0], [0., 2., 5.])

    single = time_augment(sw.Stream([[4.]]))
    assert np.array_equal(single.points, [[0., 4.]])

    with pytest.raises(ValueError):
        _ = time_augment(timed, 'fake')

    with pytest.raises(ValueError):
        _ = time_augment(timed.replace(timestamps=None), 'from-timestamps')


def test_time_diff_augment(timed):

    s = time_diff_augment(timed)
    assert np.array_equal(s.points[:, 0], [0., 2., 3.])
    assert np.array_equal(s.points[:, 1:], timed.points)

    with pytest.raises(ValueError):
        _ = time_diff_augment(sw.Stream([[0.], [1.]]))


def test_lead_lag(timed):

    s = lead_lag(sw.Stream([1., 2., 3.]))
    expected = [[1., 1.], [1., 2.], [2., 2.], [2., 3.], [3., 3.]]
    assert np.array_equal(s.points, expected)

    s = lead_lag(timed)
    assert len(s) == 2*len(timed) - 1
    assert s.dim == 2*timed.dim
    assert s.timestamps is None

    single = lead_lag(sw.Stream([[1., 2.]]))
    assert np.array_equal(single.points, [[1., 2., 1., 2.]])


def test_invisibility():

    s = invisibility(sw.Stream([1., 2.]))
    assert np.array_equal(s.points, [[1., 0.], [1., 1.], [2., 1.]])

    s = invisibility(sw.Stream(np.ones((5, 3))))
    assert len(s) == 6 and s.dim == 4


def test_apply_transforms(timed):

    names = ['invisibility', 'lead-lag', 'time-diff', 'time']
    assert canonical_transforms(names) == list(reversed(names))
    assert canonical_transforms('time') == ['time']
    assert canonical_transforms(['time', 'time']) == ['time']

    with pytest.raises(ValueError):
        _ = canonical_transforms(['time', 'fake'])

    assert apply_transforms(timed, []) is timed

    # listing order does not matter
    a = apply_transforms(timed, ['lead-lag', 'time-diff'])
    b = apply_transforms(timed, ['time-diff', 'lead-lag'])
    assert a == b

    names = list(sw.streams.TRANSFORMS)
    grid = sw.mathutils.combinations([[False, True]]*4, names)
    for flags in grid:
        names = [name for name, on in flags.items() if on]
        s = apply_transforms(timed, names)
        assert s.dim == transformed_dim(timed.dim, names)


def test_min_max_normalize():

    s = sw.Stream([[0., 5., 1.], [2., 5., 3.], [4., 5., 2.]])

    out = min_max_normalize(s)
    assert np.allclose(out.points[:, 0], [0., 0.5, 1.])
    assert np.all(out.points[:, 1] == 0.)  # constant dimension
    assert np.allclose(out.points[:, 2], [0., 1., 0.5])

    joint = min_max_normalize(s, joint=True)
    assert np.allclose(joint.points[:, 0], [0., 0.5, 1.])
    assert np.allclose(joint.points[:, 2], [0., 0.5, 0.25])

    none = sw.NormalizationParams(mode='none')
    assert min_max_normalize(s, none) is s

    params = sw.NormalizationParams([0., 0., 0.], [8., 10., 4.],
                                    mode='corpus')
    out = min_max_normalize(s, params)
    assert np.allclose(out.points[:, 0], [0., 0.25, 0.5])
    assert np.allclose(out.points[:, 1], 0.5)

    with pytest.raises(ValueError):
        _ = min_max_normalize(sw.Stream([[0., 1.]]), params)


def test_corpus_normalization():

    streams = [sw.Stream([[0., 5.], [1., 6.]]), sw.Stream([[-2., 7.]])]

    params = corpus_normalization(streams)
    assert params.mode == 'corpus'
    assert np.array_equal(params.min, [-2., 5.])
    assert np.array_equal(params.max, [1., 7.])

    for s in streams:
        out = min_max_normalize(s, params)
        assert np.all((out.points >= 0.) & (out.points <= 1.))

    with pytest.raises(ValueError):
        _ = corpus_normalization([])

    with pytest.raises(ValueError):
        _ = corpus_normalization([sw.Stream([[0.]]), sw.Stream([[0., 1.]])])


def test_distances():

    one_degree = sw.streams._distance.EARTH_RADIUS_M*np.pi / 180.
    assert haversine([0., 0.], [1., 0.]) == pytest.approx(one_degree)
    assert haversine([10., 20.], [10., 20.]) == 0.
    assert haversine([45., 10.], [46., 12.]) \
        == pytest.approx(haversine([46., 12.], [45., 10.]))

    p = np.array([[0., 0.], [0., 1.]])
    assert haversine(p[:-1], p[1:]).shape == (1,)

    with pytest.raises(ValueError):
        _ = haversine([91., 0.], [0., 0.])

    with pytest.raises(ValueError):
        _ = haversine([0., 0., 0.], [0., 0., 0.])

    assert euclidean([0., 0.], [3., 4.]) == 5.


def test_compress():

    s = sw.Stream([[0., 0.], [0.5, 0.], [2., 0.], [2.1, 0.], [4., 0.]],
                  timestamps=[0., 1., 2., 3., 4.])

    out = compress(s, 1.)
    assert np.array_equal(out.points[:, 0], [0., 2., 4.])
    assert np.array_equal(out.timestamps, [0., 2., 4.])
    assert compress(out, 1.) == out

    assert compress(s, 0.) is s

    with pytest.raises(ValueError):
        _ = compress(s, -1.)

    with pytest.raises(ValueError):
        _ = compress(sw.Stream([[0.], [1.]]), 1., 'haversine')


def test_disintegrate():

    x = np.arange(11.)
    s = sw.Stream(np.column_stack([x, 0.*x]), timestamps=x, id='v')

    subs = disintegrate(s, 3., 5.)
    assert [sub.id for sub in subs] == ['v-0', 'v-1', 'v-2']
    assert np.array_equal(subs[0].points[:, 0], [0., 1., 2., 3.])
    assert np.array_equal(subs[1].points[:, 0], [3., 4., 5., 6.])
    assert np.array_equal(subs[2].timestamps, [6., 7., 8., 9.])

    # the piece containing the 5 m step is dropped
    x = np.array([0., 1., 2., 3., 4., 9., 10., 11., 12.])
    s = sw.Stream(np.column_stack([x, 0.*x]), id='v')

    subs = disintegrate(s, 3., 5.)
    assert len(subs) == 2
    assert np.array_equal(subs[1].points[:, 0], [9., 10., 11., 12.])

    assert disintegrate(sw.Stream([[0., 0.]]), 3., 5.) == []

    with pytest.raises(ValueError):
        _ = disintegrate(s, 0., 5.)

    with pytest.raises(ValueError):
        _ = disintegrate(s, 3., 5., measure='fake')


def test_disintegrate_measures():

    x = np.array([0., 2., 0., 3., 4.])
    s = sw.Stream(np.column_stack([x, 0.*x]))

    path = disintegrate(s, 3., 10., measure='path')
    assert [len(sub) for sub in path] == [3, 2]

    displacement = disintegrate(s, 3., 10., measure='displacement')
    assert len(displacement) == 1
    assert np.array_equal(displacement[0].points[:, 0], [0., 2., 0., 3.])


def test_compress_random_walks():

    rng = np.random.default_rng(11)
    for _ in range(50):
        m = int(rng.integers(2, 40))
        points = np.cumsum(rng.normal(scale=5., size=(m, 2)), axis=0)
        s = sw.Stream(points, timestamps=np.arange(m, dtype=float))
        threshold = rng.uniform(0., 10.)

        once = compress(s, threshold)
        assert compress(once, threshold) == once
        assert np.array_equal(once.points[0], points[0])

        gaps = np.linalg.norm(np.diff(once.points, axis=0), axis=1)
        assert np.all(gaps > threshold)


def test_min_max_normalize_random_ranges():

    rng = np.random.default_rng(12)
    for _ in range(50):
        m, d = int(rng.integers(2, 20)), int(rng.integers(1, 5))
        scale = rng.uniform(0.1, 100.)
        points = scale*rng.normal(size=(m, d)) + 50.*rng.normal(size=d)

        out = min_max_normalize(sw.Stream(points)).points
        assert out.min() >= 0. and out.max() <= 1. + 1e-12
        assert np.allclose(out.min(axis=0), 0.)
        assert np.allclose(out.max(axis=0), 1.)


def test_disintegrate_random_lengths():

    rng = np.random.default_rng(13)
    for _ in range(50):
        m = int(rng.integers(5, 80))
        steps = rng.uniform(0.5, 3., size=(m, 2)) \
            * rng.choice([-1., 1.], size=(m, 2))
        s = sw.Stream(np.vstack([[0., 0.], np.cumsum(steps, axis=0)]))
        segment = rng.uniform(2., 20.)

        pieces = disintegrate(s, segment, 100.)
        for piece in pieces:
            gaps = np.linalg.norm(np.diff(piece.points, axis=0), axis=1)
            assert gaps.sum() >= segment*(1. - 1e-12)
            assert gaps[:-1].sum() < segment*(1. + 1e-12)

        for left, right in zip(pieces[:-1], pieces[1:]):
            assert np.array_equal(left.points[-1], right.points[0])

        for piece in disintegrate(s, segment, 100., measure='displacement'):
            reach = np.linalg.norm(piece.points - piece.points[0], axis=1)
            assert reach[-1] >= segment*(1. - 1e-12)
            assert np.all(reach[1:-1] < segment*(1. + 1e-12))
