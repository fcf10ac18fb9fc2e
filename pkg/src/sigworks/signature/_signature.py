from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from ._words import sig_dim, word_index, level_slice

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

    from sigworks._core import Stream


class SignatureVector:
    """Truncated signature coefficients."""

    __slots__ = ('_coeffs', 'dim', 'order',)

    def __init__(self, coeffs: npt.ArrayLike, dim: int, order: int) -> None:
        """
        Word-indexed coefficients of an order-`N` truncated signature (or any
        element of the truncated tensor algebra). Coefficients are stored in
        graded-lexicographic word order, see `words`, so vectors from
        different streams and persisted models are directly comparable.

        Parameters
        ----------
        coeffs : ArrayLike, shape(sig_dim(dim, order),)
            Coefficients, starting with the empty word.
        dim : int
            Stream dimension `d`.
        order : int
            Truncation order `N`.

        Raises
        ------
        ValueError
            'coeffs' length must equal `sig_dim(dim, order)`.

        """

        coeffs = np.array(coeffs, dtype=float).ravel()

        expected = sig_dim(dim, order)
        if coeffs.size != expected:
            raise ValueError(f"'coeffs' has length {coeffs.size}, expected"
                             f" sig_dim({dim}, {order}) = {expected}.")

        coeffs.setflags(write=False)

        self._coeffs = coeffs
        self.dim = int(dim)
        self.order = int(order)

    def __len__(self) -> int:
        return self._coeffs.size

    def __repr__(self) -> str:
        return (
            f"SignatureVector(dim={self.dim}, order={self.order},"
            f" coeffs={self._coeffs})"
        )

    def __getitem__(self, word: tuple[int, ...]) -> float:
        """Coefficient of a word, e.g., `sig[(1, 2)]`."""
        if len(word) > self.order:
            raise KeyError(f"{word=} is longer than order={self.order}.")
        return float(self._coeffs[word_index(tuple(word), self.dim)])

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        if dtype is None:
            return self._coeffs.copy()
        return self._coeffs.astype(dtype)

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array."""
        return self._coeffs

    @classmethod
    def unit(cls, dim: int, order: int) -> SignatureVector:
        """The identity for `chen_product`, i.e., (1, 0, ..., 0)."""
        coeffs = np.zeros(sig_dim(dim, order))
        coeffs[0] = 1.
        return cls(coeffs, dim, order)

    def level(self, k: int) -> np.ndarray:
        """
        Level-`k` block reshaped as a tensor.

        Parameters
        ----------
        k : int
            Word length in `0..order`.

        Returns
        -------
        block : np.ndarray, shape(d,)*k
            Coefficients of all words of length `k`.

        """
        if not 0 <= k <= self.order:
            raise ValueError(f"'k' must be in 0..{self.order}, got {k=}.")

        block = self._coeffs[level_slice(self.dim, k)]
        return block.reshape((self.dim,)*k)

    def _levels(self) -> list[np.ndarray]:
        return [self._coeffs[level_slice(self.dim, k)]
                for k in range(self.order + 1)]


def segment_signature(increment: npt.ArrayLike, N: int) -> SignatureVector:
    """
    Signature of one linear segment.

    The coefficient of word `(i_1, ..., i_k)` is
    `increment[i_1 - 1]*...*increment[i_k - 1] / k!`, i.e., the truncated
    tensor exponential of the increment.

    Parameters
    ----------
    increment : ArrayLike, shape(d,)
        Segment increment.
    N : int
        Truncation order.

    Returns
    -------
    sig : SignatureVector
        The segment signature.

    """

    increment = np.array(increment, dtype=float).ravel()
    d = increment.size

    levels = [np.ones(1)]
    for k in range(1, N + 1):
        levels.append(np.multiply.outer(levels[-1], increment).ravel() / k)

    return SignatureVector(np.concatenate(levels), d, N)


def chen_product(a: SignatureVector, b: SignatureVector) -> SignatureVector:
    """
    Truncated tensor product of two signature vectors.

    The coefficient of word `w` is the sum of `a[u]*b[v]` over every split
    `w = u + v`. For signatures, this is the signature of the concatenated
    path (Chen's identity).

    Parameters
    ----------
    a : SignatureVector
        Left factor.
    b : SignatureVector
        Right factor, same dimension and order as 'a'.

    Returns
    -------
    product : SignatureVector
        The product, truncated at the common order.

    Raises
    ------
    ValueError
        Dimension or order mismatch.

    """

    if a.dim != b.dim or a.order != b.order:
        raise ValueError(
            f"Cannot multiply signatures with (dim, order) = ({a.dim},"
            f" {a.order}) and ({b.dim}, {b.order})."
        )

    la, lb = a._levels(), b._levels()

    out = []
    for k in range(a.order + 1):
        block = np.zeros(a.dim**k)
        for j in range(k + 1):
            block += np.multiply.outer(la[j], lb[k - j]).ravel()
        out.append(block)

    return SignatureVector(np.concatenate(out), a.dim, a.order)


def signature(s: Stream, N: int) -> SignatureVector:
    """
    Order-`N` truncated signature of a stream.

    The stream is read as the piecewise-linear path through its points, so
    the result is the Chen product of `segment_signature(x_{i+1} - x_i, N)`
    over all segments. Evaluation multiplies segment exponentials into a
    running product with a Horner scheme rather than forming each segment
    signature explicitly. The result does not depend on timestamps.

    Parameters
    ----------
    s : Stream
        Input stream. A one-point stream gives (1, 0, ..., 0).
    N : int
        Truncation order.

    Returns
    -------
    sig : SignatureVector
        The stream signature.

    """

    d = s.dim
    sig_dim(d, N)

    levels = [np.ones(1)] + [np.zeros(d**k) for k in range(1, N + 1)]
    for increment in np.diff(s.points, axis=0):
        if increment.any():
            _times_exp(levels, increment)

    return SignatureVector(np.concatenate(levels), d, N)


def signatures(streams: Sequence[Stream], N: int, n_jobs: int = 1,
               progress: bool = False) -> np.ndarray:
    """
    Signature feature matrix for many streams.

    Parameters
    ----------
    streams : Sequence[Stream]
        Input streams, all with the same dimension.
    N : int
        Truncation order.
    n_jobs : int, optional
        Number of joblib workers. The default is 1. Rows are always returned
        in input order.
    progress : bool, optional
        Show a progress bar. The default is False.

    Returns
    -------
    features : np.ndarray, shape(len(streams), sig_dim(d, N))
        One signature per row.

    Raises
    ------
    ValueError
        Streams must all have the same dimension.

    """

    from joblib import Parallel, delayed
    from sigworks.utils import ProgressBar

    dims = {s.dim for s in streams}
    if len(dims) > 1:
        raise ValueError(f"Streams must all have the same dimension, got"
                         f" {sorted(dims)}.")

    if not streams:
        return np.zeros((0, 0))

    iterable = ProgressBar(streams, 'signatures', enabled=progress)

    if n_jobs == 1:
        rows = [signature(s, N).coeffs for s in iterable]
    else:
        rows = Parallel(n_jobs=n_jobs)(
            delayed(_coeffs)(s, N) for s in iterable
        )

    return np.vstack(rows)


def _coeffs(s: Stream, N: int) -> np.ndarray:
    return signature(s, N).coeffs


def _times_exp(levels: list[np.ndarray], increment: np.ndarray) -> None:
    """In-place right multiplication by the exponential of 'increment'."""

    # level k of a*exp(x) is sum_j a_j x^(k-j)/(k-j)!, nested Horner-style as
    # (((a_0 x/k + a_1) x/(k-1) + a_2) ... + a_{k-1}) x/1 + a_k
    N = len(levels) - 1
    for k in range(N, 0, -1):
        t = levels[0]
        for j in range(1, k + 1):
            t = np.multiply.outer(t, increment).ravel() / (k - j + 1) \
                + levels[j]
        levels[k] = t
