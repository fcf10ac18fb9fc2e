import pytest
import numpy as np
import sigworks as sw


def test_combinations():

    names = ['a', 'b']
    values = [np.array([0., 1.]), np.array([3., 4.])]

    combinations_nonames = sw.mathutils.combinations(values)
    combinations_names = sw.mathutils.combinations(values, names)

    no_names = []
    with_names = []
    for a in values[0]:
        new_nonames, new_names = {}, {}
        new_nonames[0], new_names['a'] = a, a
        for b in values[1]:
            new_nonames[1], new_names['b'] = b, b

            no_names.append(new_nonames.copy())
            with_names.append(new_names.copy())

    assert combinations_nonames == no_names
    assert combinations_names == with_names

    with pytest.raises(ValueError):
        _ = sw.mathutils.combinations(values, ['a'])

    grid = sw.mathutils.combinations([[False, True]]*3)
    assert len(grid) == 8
    assert grid[0] == {0: False, 1: False, 2: False}
    assert grid[1] == {0: False, 1: False, 2: True}


def test_as_extended():

    array = sw.mathutils.as_extended([[1, np.inf], [-np.inf, 2]])
    assert array.dtype == float
    assert array.shape == (4,)

    values = np.array([0., 1.])
    assert sw.mathutils.as_extended(values) is not values

    with pytest.raises(ValueError, match="'scores' contains NaN"):
        _ = sw.mathutils.as_extended([0., np.nan], 'scores')


def test_quantile_higher():

    values = np.arange(21.)
    assert sw.mathutils.quantile_higher(values, 0.95) == 19.
    assert sw.mathutils.quantile_higher(values, 0.) == 0.
    assert sw.mathutils.quantile_higher(values, 1.) == 20.

    rng = np.random.default_rng(0)
    for _ in range(50):
        x = rng.normal(size=int(rng.integers(1, 30)))
        q = rng.uniform()

        expected = np.quantile(x, q, method='higher')
        assert sw.mathutils.quantile_higher(x, q) == expected

    with_inf = [3., np.inf, 1., np.inf]
    assert sw.mathutils.quantile_higher(with_inf, 0.5) == np.inf
    assert sw.mathutils.quantile_higher(with_inf, 0.2) == 3.

    with pytest.raises(ValueError):
        _ = sw.mathutils.quantile_higher([], 0.5)

    with pytest.raises(ValueError):
        _ = sw.mathutils.quantile_higher([1.], 1.5)
