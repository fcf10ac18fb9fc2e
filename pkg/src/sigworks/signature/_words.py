from __future__ import annotations

import itertools

from functools import lru_cache

import numpy as np

_INDEX_LIMIT = np.iinfo(np.int64).max


def sig_dim(d: int, N: int) -> int:
    """
    Number of signature coefficients, `1 + d + d**2 + ... + d**N`.

    Parameters
    ----------
    d : int
        Stream dimension, `d >= 1`.
    N : int
        Truncation order, `N >= 0`.

    Returns
    -------
    dim : int
        The signature dimension. Computed as a sum, so `d = 1` needs no
        special case.

    Raises
    ------
    ValueError
        'd' must be a positive int and 'N' a nonnegative int.
    OverflowError
        The dimension exceeds the range of a 64-bit index.

    """

    _check_dN(d, N)
    d, N = int(d), int(N)  # python ints never wrap

    dim = sum(d**k for k in range(N + 1))
    if dim > _INDEX_LIMIT:
        raise OverflowError(f"Signature dimension for {d=}, {N=} exceeds the"
                            " 64-bit index range.")

    return dim


@lru_cache(maxsize=64)
def words(d: int, N: int) -> tuple[tuple[int, ...], ...]:
    """
    Graded-lexicographic word basis.

    Words are tuples of letters in `1..d`, ordered first by length and then
    lexicographically. Position `i` in the result is the coefficient index of
    that word in every signature vector of dimension `d` and order `N`.

    Parameters
    ----------
    d : int
        Alphabet size (stream dimension).
    N : int
        Longest word length.

    Returns
    -------
    words : tuple[tuple[int, ...], ...]
        All `sig_dim(d, N)` words, starting with the empty word `()`.

    """

    sig_dim(d, N)  # validates and guards size

    letters = range(1, d + 1)
    return tuple(
        w for k in range(N + 1) for w in itertools.product(letters, repeat=k)
    )


def word_index(word: tuple[int, ...], d: int) -> int:
    """
    Coefficient index of a word.

    Parameters
    ----------
    word : tuple[int, ...]
        Letters in `1..d`. The empty tuple is the empty word.
    d : int
        Alphabet size.

    Returns
    -------
    index : int
        Position of 'word' in the graded-lexicographic basis.

    Raises
    ------
    ValueError
        Letters must be in `1..d`.

    """

    k = len(word)
    offset = sig_dim(d, k - 1) if k > 0 else 0

    position = 0
    for letter in word:
        if not 1 <= letter <= d:
            raise ValueError(f"Letters must be in 1..{d}, got {word=}.")
        position = position*d + (letter - 1)

    return offset + position


def level_slice(d: int, k: int) -> slice:
    """Slice of the level-`k` block (words of length `k`) in a vector."""
    start = sig_dim(d, k - 1) if k > 0 else 0
    return slice(start, start + d**k)


def _check_dN(d: int, N: int) -> None:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise ValueError(f"'d' must be a positive int, got {d=}.")
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 0:
        raise ValueError(f"'N' must be a nonnegative int, got {N=}.")
