"""
Mathutils
---------
General-purpose numerical helpers shared across subpackages. Includes the
grid builder used for transform combinations and extended-real utilities,
where +inf is a legitimate score (out-of-span conformance) but NaN is not.

"""

from __future__ import annotations
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt


def combinations(values: list[npt.ArrayLike],
                 names: list[str] | None = None) -> list[dict]:
    """
    Generate all value combinations.

    Parameters
    ----------
    values : list[ArrayLike]
        Variable values. Sequence `i` corresponds to `names[i]`, if provided.
    names : list[str], optional
        Variable names. Defaults to `range(N)` when not provided, where `N`
        is the length of 'values'.

    Returns
    -------
    combinations : list[dict]
        One dictionary per combination, ordered like `itertools.product`,
        i.e., the last variable changes fastest.

    Raises
    ------
    ValueError
        'names' and 'values' must have the same length.

    Examples
    --------
    The eight on/off settings of three stream transforms:

    .. code-block:: python

        from sigworks.mathutils import combinations

        grid = combinations([[False, True]]*3,
                            ['lead-lag', 'time-diff', 'invisibility'])

    """

    import itertools

    if names is None:
        names = list(range(len(values)))
    elif len(names) != len(values):
        raise ValueError("'names' and 'values' must have the same length.")

    return [dict(zip(names, combo)) for combo in itertools.product(*values)]


def as_extended(values: npt.ArrayLike, name: str = 'values') -> np.ndarray:
    """
    Convert to a float array of extended reals.

    Parameters
    ----------
    values : ArrayLike
        Input values. +inf and -inf are allowed.
    name : str, optional
        Argument name used in error messages. The default is 'values'.

    Returns
    -------
    array : np.ndarray
        A 1D float copy of 'values'.

    Raises
    ------
    ValueError
        NaN values cannot be ordered.

    """

    array = np.array(values, dtype=float).ravel()
    if np.any(np.isnan(array)):
        raise ValueError(f"'{name}' contains NaN, which cannot be ordered.")

    return array


def quantile_higher(values: npt.ArrayLike, q: float) -> float:
    """
    Empirical quantile that is always an attained value.

    Equivalent to `numpy.quantile(values, q, method='higher')` but safe for
    +inf entries, which sort above every finite value and never enter an
    interpolation.

    Parameters
    ----------
    values : ArrayLike
        Nonempty extended-real values.
    q : float
        Quantile level in [0, 1].

    Returns
    -------
    quantile : float
        The sorted value at index `ceil(q*(n - 1))`.

    Raises
    ------
    ValueError
        'q' must be in [0, 1].
    ValueError
        'values' cannot be empty.

    """

    if not 0. <= q <= 1.:
        raise ValueError(f"'q' must be in [0, 1], got {q=}.")

    array = np.sort(as_extended(values))
    if array.size == 0:
        raise ValueError("'values' cannot be empty.")

    # round away float fuzz, e.g., 0.95*20 = 19.000000000000004
    index = int(np.ceil(round(q*(array.size - 1), 9)))

    return float(array[index])
