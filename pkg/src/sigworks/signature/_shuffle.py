from __future__ import annotations

from typing import TYPE_CHECKING
from functools import lru_cache
from collections import Counter

import numpy as np

from ._words import sig_dim, words, word_index

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

Word = tuple[int, ...]


class ShuffleTable:
    """Memoized shuffle products of basis words."""

    __slots__ = ('dim', 'order', '_targets', '_counts',)

    def __init__(self, dim: int, order: int) -> None:
        """
        Precomputes `u ⧢ v` for every pair of words with `|u|, |v| <= order`
        over an alphabet of size 'dim'. Each product is stored sparsely as
        indices into the order `2*order` basis and positive multiplicities.
        The table is read-only after construction, so one instance can be
        shared between workers. Use `shuffle_table` to get a cached instance.

        Parameters
        ----------
        dim : int
            Alphabet size (stream dimension).
        order : int
            Longest factor length `N`.

        """

        basis = words(dim, order)
        size = len(basis)

        targets = np.empty((size, size), dtype=object)
        counts = np.empty((size, size), dtype=object)
        for i, u in enumerate(basis):
            for j, v in enumerate(basis[i:], start=i):
                product = shuffle_words(u, v)
                idx = np.array([word_index(w, dim) for w in product])
                mult = np.array(list(product.values()), dtype=float)

                targets[i, j] = targets[j, i] = idx
                counts[i, j] = counts[j, i] = mult

        self.dim = dim
        self.order = order
        self._targets = targets
        self._counts = counts

    def __repr__(self) -> str:
        return f"ShuffleTable(dim={self.dim}, order={self.order})"

    def __getitem__(self, pair: tuple[int, int]) -> tuple[np.ndarray, ...]:
        """
        Sparse product of the basis words at positions `pair = (i, j)`.

        Returns
        -------
        indices : np.ndarray[int]
            Positions of the product words in the order `2*order` basis.
        multiplicities : np.ndarray[float]
            Multiplicity of each word.

        """
        i, j = pair
        return self._targets[i, j], self._counts[i, j]


@lru_cache(maxsize=16)
def shuffle_table(dim: int, order: int) -> ShuffleTable:
    """Cached `ShuffleTable` for a (dim, order) pair."""
    return ShuffleTable(dim, order)


def shuffle_words(u: Word, v: Word) -> Counter:
    """
    Shuffle product of two words.

    Returns every interleaving of 'u' and 'v' that preserves the internal
    letter order of each, with multiplicity. Uses the recursion
    `(u a) ⧢ (v b) = ((u ⧢ v b) a) + ((u a ⧢ v) b)` with the empty word
    as unit. The total multiplicity is `binomial(|u| + |v|, |u|)`.

    Parameters
    ----------
    u : tuple[int, ...]
        First word.
    v : tuple[int, ...]
        Second word.

    Returns
    -------
    product : Counter
        Maps each resulting word (a tuple) to its multiplicity.

    Examples
    --------
    >>> shuffle_words((1,), (2,))
    Counter({(2, 1): 1, (1, 2): 1})
    >>> shuffle_words((1,), (1,))
    Counter({(1, 1): 2})

    """
    return Counter(_shuffle(tuple(u), tuple(v)))


def shuffle_apply(f: npt.ArrayLike, g: npt.ArrayLike, d: int,
                  N: int) -> np.ndarray:
    """
    Bilinear shuffle product of two linear functionals.

    For functionals 'f' and 'g' on order-`N` signatures this returns
    `f ⧢ g` on order-`2N` signatures, which satisfies
    `<f, Sig^N(x)> <g, Sig^N(x)> = <f ⧢ g, Sig^2N(x)>` for every stream.

    Parameters
    ----------
    f : ArrayLike, shape(sig_dim(d, N),)
        Coefficients of the first functional in the word basis.
    g : ArrayLike, shape(sig_dim(d, N),)
        Coefficients of the second functional.
    d : int
        Alphabet size.
    N : int
        Order of 'f' and 'g'.

    Returns
    -------
    product : np.ndarray, shape(sig_dim(d, 2*N),)
        Coefficients of `f ⧢ g`.

    Raises
    ------
    ValueError
        'f' and 'g' must have length `sig_dim(d, N)`.

    """

    f = np.asarray(f, dtype=float).ravel()
    g = np.asarray(g, dtype=float).ravel()

    size = sig_dim(d, N)
    if f.size != size or g.size != size:
        raise ValueError(f"'f' and 'g' must have length sig_dim({d}, {N}) ="
                         f" {size}, got {f.size} and {g.size}.")

    table = shuffle_table(d, N)

    out = np.zeros(sig_dim(d, 2*N))
    for i in np.flatnonzero(f):
        for j in np.flatnonzero(g):
            idx, mult = table[i, j]
            np.add.at(out, idx, f[i]*g[j]*mult)

    return out


@lru_cache(maxsize=None)
def _shuffle(u: Word, v: Word) -> tuple[Word, ...]:
    if not u:
        return (v,)
    if not v:
        return (u,)

    left = tuple(w + u[-1:] for w in _shuffle(u[:-1], v))
    right = tuple(w + v[-1:] for w in _shuffle(u, v[:-1]))

    return left + right
