from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from sigworks.signature import (
    SignatureVector, sig_dim, signatures, shuffle_table,
)

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

    from sigworks._core import Stream


def expected_signature(streams: Sequence[Stream], N: int,
                       n_jobs: int = 1) -> SignatureVector:
    """
    Coordinatewise mean of stream signatures.

    Parameters
    ----------
    streams : Sequence[Stream]
        Nonempty list of streams with a common dimension.
    N : int
        Truncation order. Use `2*N` to feed `second_moment_via_shuffle`.
    n_jobs : int, optional
        Workers for signature computation. The default is 1.

    Returns
    -------
    expected : SignatureVector
        The empirical expected signature.

    Raises
    ------
    ValueError
        'streams' cannot be empty.

    """

    if len(streams) == 0:
        raise ValueError("'streams' cannot be empty.")

    features = signatures(streams, N, n_jobs)
    return SignatureVector(features.mean(axis=0), streams[0].dim, N)


def second_moment_via_shuffle(expected_sig_2N: SignatureVector, d: int,
                              N: int) -> np.ndarray:
    """
    Second-moment matrix of order-`N` signatures from one expected signature.

    Entry `(i, j)` pairs the shuffle of basis words `e_i` and `e_j` with the
    order-`2N` expected signature. Since products of signature coordinates
    are linear in the higher order signature, this equals `E[s s^T]` for
    `s = Sig^N(x)` without ever forming the outer products.

    Parameters
    ----------
    expected_sig_2N : SignatureVector
        Expected signature of order at least `2*N`, see `expected_signature`.
    d : int
        Stream dimension.
    N : int
        Order of the signatures whose moment is wanted.

    Returns
    -------
    A : np.ndarray, shape(sig_dim(d, N), sig_dim(d, N))
        Symmetric, uncentered second-moment matrix. `A[0, 0] == 1`.

    Raises
    ------
    ValueError
        Dimension mismatch or order below `2*N`.

    """

    _check_expected(expected_sig_2N, d, N)

    E = expected_sig_2N.coeffs
    table = shuffle_table(d, N)

    size = sig_dim(d, N)
    A = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            idx, mult = table[i, j]
            A[i, j] = A[j, i] = mult @ E[idx]

    return A


def covariance_via_shuffle(expected_sig_2N: SignatureVector, d: int,
                           N: int) -> np.ndarray:
    """
    Centered covariance of order-`N` signatures, `A - m m^T`.

    Here `A` is `second_moment_via_shuffle` and `m` is the order-`N`
    truncation of the expected signature. The result matches the covariance
    used by `fit` on the same corpus.

    """
    A = second_moment_via_shuffle(expected_sig_2N, d, N)
    mean = expected_sig_2N.coeffs[:sig_dim(d, N)]
    return A - np.outer(mean, mean)


def shuffle_variance_norm(expected_sig_2N: SignatureVector, w: npt.ArrayLike,
                          d: int, N: int, spectral_cutoff: float = 1e-10,
                          null_tolerance: float = 1e-8) -> float:
    """
    Uncentered shuffle quadratic form `<w, A^+ w>`.

    Corpus statistics enter only through the order-`2N` expected signature.
    `A^+` is the spectral pseudo-inverse of `second_moment_via_shuffle` with
    the same cutoff and out-of-span rules as `ConformanceModel`. The value is
    a squared norm; its square root orders inputs identically.

    Parameters
    ----------
    expected_sig_2N : SignatureVector
        Expected signature of order at least `2*N`.
    w : ArrayLike, shape(sig_dim(d, N),)
        Finite vector in the order-`N` word basis.
    d : int
        Stream dimension.
    N : int
        Order of 'w'.
    spectral_cutoff : float, optional
        Relative eigenvalue cutoff. The default is 1e-10.
    null_tolerance : float, optional
        Relative out-of-span tolerance. The default is 1e-8.

    Returns
    -------
    value : float
        The quadratic form, +inf when 'w' leaves the span of `A`.

    Raises
    ------
    ValueError
        'w' must be finite with length `sig_dim(d, N)`.

    """
    from scipy.linalg import eigh

    w = np.asarray(w, dtype=float).ravel()
    if w.size != sig_dim(d, N) or not np.isfinite(w).all():
        raise ValueError(f"'w' must be finite with length {sig_dim(d, N)}.")

    A = second_moment_via_shuffle(expected_sig_2N, d, N)
    eigenvalues, eigenvectors = eigh(A)
    eigenvalues = np.clip(eigenvalues, 0., None)

    lambda_max = eigenvalues.max(initial=0.)
    keep = (eigenvalues > 0.) & (eigenvalues >= spectral_cutoff*lambda_max)

    coeffs = w @ eigenvectors
    scale = max(1., float(np.linalg.norm(w)))
    if np.abs(coeffs[~keep]).max(initial=0.) > null_tolerance*scale:
        return np.inf

    return float((coeffs[keep]**2 / eigenvalues[keep]).sum())


def _check_expected(expected: SignatureVector, d: int, N: int) -> None:
    if expected.dim != d:
        raise ValueError(f"Expected signature has dim={expected.dim}, but"
                         f" {d=}.")
    elif expected.order < 2*N:
        raise ValueError(f"Expected signature has order={expected.order},"
                         f" at least 2*N = {2*N} is required.")
