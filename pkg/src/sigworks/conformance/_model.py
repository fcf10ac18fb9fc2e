from __future__ import annotations

import logging

from typing import TYPE_CHECKING, Sequence
from warnings import warn

import numpy as np

from sigworks._core import DataError, NormalizationParams
from ._tables import Score

if TYPE_CHECKING:  # pragma: no cover
    import numpy.typing as npt

    from sigworks._core import Stream
    from ._tables import Calibration

logger = logging.getLogger(__name__)


class ConformanceModel:
    """Fitted corpus model."""

    __slots__ = ('mean', 'eigenvalues', 'eigenvectors', 'corpus_features',
                 'spectral_cutoff', 'null_tolerance', 'pipeline_meta',
                 'calibration', '_keep', '_projected',)

    def __init__(self, mean: npt.ArrayLike, eigenvalues: npt.ArrayLike,
                 eigenvectors: npt.ArrayLike, corpus_features: npt.ArrayLike,
                 spectral_cutoff: float = 1e-10, null_tolerance: float = 1e-8,
                 pipeline_meta: dict | None = None,
                 calibration: Calibration | None = None) -> None:
        """
        Spectral form of the centered corpus covariance, together with the
        corpus rows needed for nearest-member search. Instances are normally
        built with `fit` or `ConformanceModel.from_streams` and restored with
        `load_model`; the constructor only stores and checks the pieces.
        Models are read-only after construction and safe to share between
        workers.

        Parameters
        ----------
        mean : ArrayLike, shape(p,)
            Corpus mean.
        eigenvalues : ArrayLike, shape(p,)
            Covariance eigenvalues, nonnegative and nonincreasing.
        eigenvectors : ArrayLike, shape(p, p)
            Orthonormal eigenvectors stored as columns.
        corpus_features : ArrayLike, shape(m, p)
            Corpus feature vectors, one per row.
        spectral_cutoff : float, optional
            Eigenvalues below `spectral_cutoff*max(eigenvalues)` are treated
            as null directions. The default is 1e-10.
        null_tolerance : float, optional
            A difference `w` is out of span when a null-direction component
            exceeds `null_tolerance*max(1, |w|)`. The default is 1e-8.
        pipeline_meta : dict or None, optional
            Stream-to-feature pipeline (order, transforms, parameterization,
            normalization, stream dim). None for models fit directly on
            feature matrices, in which case `features` is unavailable.
        calibration : Calibration or None, optional
            Calibration results to carry along, e.g., into a model file.

        Raises
        ------
        ValueError
            Inconsistent array shapes.
        ValueError
            'spectral_cutoff' and 'null_tolerance' must be nonnegative.

        """

        mean = _readonly(mean, ndim=1)
        eigenvalues = _readonly(eigenvalues, ndim=1)
        eigenvectors = _readonly(eigenvectors, ndim=2)
        corpus_features = _readonly(corpus_features, ndim=2)

        p = mean.size
        if eigenvalues.size != p or eigenvectors.shape != (p, p):
            raise ValueError(f"Spectral data does not match feature_dim={p}.")
        elif corpus_features.shape[1] != p:
            raise ValueError(f"'corpus_features' must have {p} columns, got"
                             f" {corpus_features.shape[1]}.")

        if spectral_cutoff < 0. or null_tolerance < 0.:
            raise ValueError("'spectral_cutoff' and 'null_tolerance' must be"
                             " nonnegative.")

        lambda_max = eigenvalues.max(initial=0.)
        keep = (eigenvalues > 0.) & (eigenvalues >= spectral_cutoff*lambda_max)

        projected = corpus_features @ eigenvectors
        projected.setflags(write=False)

        self.mean = mean
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.corpus_features = corpus_features
        self.spectral_cutoff = float(spectral_cutoff)
        self.null_tolerance = float(null_tolerance)
        self.pipeline_meta = pipeline_meta
        self.calibration = calibration

        self._keep = keep
        self._projected = projected

    def __repr__(self) -> str:
        return (
            f"ConformanceModel(feature_dim={self.feature_dim},"
            f" n_corpus={self.n_corpus}, rank={self.rank})"
        )

    @property
    def feature_dim(self) -> int:
        """Length `p` of the feature vectors."""
        return self.mean.size

    @property
    def n_corpus(self) -> int:
        """Number of corpus rows."""
        return self.corpus_features.shape[0]

    @property
    def rank(self) -> int:
        """Number of eigen-directions kept by the spectral cutoff."""
        return int(self._keep.sum())

    @classmethod
    def from_streams(cls, streams: Sequence[Stream], order: int,
                     transforms: Sequence[str] = (),
                     normalization: str = 'none',
                     parameterization: str = 'uniform',
                     spectral_cutoff: float = 1e-10,
                     null_tolerance: float = 1e-8, n_jobs: int = 1,
                     progress: bool = False) -> ConformanceModel:
        """
        Fit a model from raw streams.

        Streams pass through the transforms (canonical order), Min-Max
        normalization, and order-`N` signatures. The pipeline is recorded in
        `pipeline_meta` so `features` reproduces it for new streams. Corpus
        normalization extremes are computed from the transformed corpus.

        Parameters
        ----------
        streams : Sequence[Stream]
            Corpus streams, all with the same dimension.
        order : int
            Signature order `N >= 1`.
        transforms : Sequence[str], optional
            Transform names, see `sigworks.streams.apply_transforms`. The
            default is no transforms.
        normalization : {'none', 'per-stream', 'corpus'}, optional
            Min-Max mode. The default is 'none'.
        parameterization : {'uniform', 'from-timestamps'}, optional
            Time coordinate used by the 'time' transform. The default is
            'uniform'.
        spectral_cutoff : float, optional
            Relative eigenvalue cutoff. The default is 1e-10.
        null_tolerance : float, optional
            Relative out-of-span tolerance. The default is 1e-8.
        n_jobs : int, optional
            Workers for signature computation. The default is 1.
        progress : bool, optional
            Show a progress bar. The default is False.

        Returns
        -------
        model : ConformanceModel
            The fitted model.

        Raises
        ------
        ValueError
            'order' must be at least 1.
        DataError
            Fewer than two streams, or mismatched stream dimensions.

        """
        from sigworks.streams import (
            apply_transforms, canonical_transforms, corpus_normalization,
        )

        if isinstance(order, bool) or not isinstance(order, int) or order < 1:
            raise ValueError(f"'order' must be an int >= 1, got {order=}.")

        if len(streams) < 2:
            raise DataError(f"A corpus needs at least 2 streams, got"
                            f" {len(streams)}.")

        dims = {s.dim for s in streams}
        if len(dims) > 1:
            raise DataError(f"Streams must all have the same dimension, got"
                            f" {sorted(dims)}.")

        names = canonical_transforms(transforms)
        if normalization == 'corpus':
            transformed = [apply_transforms(s, names, parameterization)
                           for s in streams]
            params = corpus_normalization(transformed)
        else:
            params = NormalizationParams(mode=normalization)

        meta = {
            'order': order,
            'transforms': names,
            'parameterization': parameterization,
            'normalization': params.to_dict(),
            'stream_dim': dims.pop(),
        }

        features = pipeline_features(streams, meta, n_jobs, progress)

        return fit(features, spectral_cutoff, null_tolerance, meta)

    def features(self, streams: Sequence[Stream], n_jobs: int = 1,
                 progress: bool = False) -> np.ndarray:
        """
        Map streams through the recorded pipeline.

        Parameters
        ----------
        streams : Sequence[Stream]
            Input streams with the corpus stream dimension.
        n_jobs : int, optional
            Workers for signature computation. The default is 1.
        progress : bool, optional
            Show a progress bar. The default is False.

        Returns
        -------
        features : np.ndarray, shape(len(streams), feature_dim)
            Feature rows in input order.

        Raises
        ------
        ValueError
            The model has no recorded pipeline.
        DataError
            Stream dimension does not match the corpus.

        """

        if self.pipeline_meta is None:
            raise ValueError("Model was fit on features and has no stream"
                             " pipeline.")

        expected = self.pipeline_meta['stream_dim']
        for s in streams:
            if s.dim != expected:
                raise DataError(f"Stream {s.id!r} has dim={s.dim}, but the"
                                f" model expects {expected}.")

        if len(streams) == 0:
            return np.zeros((0, self.feature_dim))

        return pipeline_features(streams, self.pipeline_meta, n_jobs,
                                 progress)

    def with_calibration(self, calibration: Calibration) -> ConformanceModel:
        """Copy of the model that carries 'calibration'."""
        return ConformanceModel(
            self.mean, self.eigenvalues, self.eigenvectors,
            self.corpus_features, self.spectral_cutoff, self.null_tolerance,
            self.pipeline_meta, calibration,
        )

    def variance_norm(self, x: npt.ArrayLike) -> float:
        """Shortcut for `variance_norm(self, x)`."""
        return variance_norm(self, x)

    def conformance(self, x: npt.ArrayLike) -> Score:
        """Shortcut for `conformance(self, x)`."""
        return conformance(self, x)


def fit(corpus_features: npt.ArrayLike, spectral_cutoff: float = 1e-10,
        null_tolerance: float = 1e-8,
        pipeline_meta: dict | None = None) -> ConformanceModel:
    """
    Fit a conformance model to a feature matrix.

    The covariance is centered at the corpus mean and normalized by `1/m`.
    Its symmetric eigendecomposition is stored with eigenvalues sorted
    nonincreasing. Tiny negative eigenvalues from round-off are clipped to 0.

    Parameters
    ----------
    corpus_features : ArrayLike, shape(m, p)
        Corpus feature vectors, one per row, `m >= 2`.
    spectral_cutoff : float, optional
        Relative eigenvalue cutoff for null directions. The default is 1e-10.
    null_tolerance : float, optional
        Relative out-of-span tolerance. The default is 1e-8.
    pipeline_meta : dict or None, optional
        Recorded stream pipeline, see `ConformanceModel`. The default is None.

    Returns
    -------
    model : ConformanceModel
        The fitted model.

    Raises
    ------
    DataError
        'corpus_features' must be 2D with at least 2 rows.
    DataError
        'corpus_features' cannot contain non-finite values.

    Examples
    --------
    .. code-block:: python

        import numpy as np
        from sigworks.conformance import fit

        corpus = np.array([[1, 0], [-1, 0], [0, 2], [0, -2]])
        model = fit(corpus)

        print(model.eigenvalues)  # [2. , 0.5]
        print(model.conformance([2, 0]))  # value = sqrt(2)

    """
    from scipy.linalg import eigh

    X = np.array(corpus_features, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DataError(f"'corpus_features' must be 2D with at least 2 rows,"
                        f" got shape={X.shape}.")
    elif not np.isfinite(X).all():
        raise DataError("'corpus_features' cannot contain non-finite values.")

    m, p = X.shape
    mean = X.mean(axis=0)

    centered = X - mean
    cov = centered.T @ centered / m

    eigenvalues, eigenvectors = eigh(cov)
    eigenvalues = np.clip(eigenvalues[::-1], 0., None)
    eigenvectors = eigenvectors[:, ::-1]

    model = ConformanceModel(mean, eigenvalues, eigenvectors, X,
                             spectral_cutoff, null_tolerance, pipeline_meta)

    logger.info("Fit model on %d rows, feature_dim=%d, rank=%d", m, p,
                model.rank)

    if model.rank == 0:
        warn("Corpus covariance is zero; every nonzero difference will score"
             " as out of span.")

    return model


def variance_norm(model: ConformanceModel, x: npt.ArrayLike) -> float:
    """
    Variance norm of a vector.

    The dual of the corpus covariance quadratic form. Computed as a
    Mahalanobis norm with a spectral pseudo-inverse. 'x' is used as given
    (not re-centered), so pass differences of feature vectors.

    Parameters
    ----------
    model : ConformanceModel
        A fitted model.
    x : ArrayLike, shape(p,)
        Finite input vector.

    Returns
    -------
    norm : float
        `sqrt(sum(c_i**2 / lambda_i))` over kept eigen-directions, where
        `c = eigenvectors.T @ x`. Returns +inf when 'x' has a component in a
        null direction larger than `null_tolerance*max(1, |x|)`.

    Raises
    ------
    ValueError
        'x' must be finite and have length `model.feature_dim`.

    """

    x = _check_vector(model, x)
    coeffs = x @ model.eigenvectors

    return float(_norms(model, coeffs[None, :])[0])


def conformance(model: ConformanceModel, x: npt.ArrayLike) -> Score:
    """
    Conformance of a vector to the corpus.

    The smallest variance norm of `x - y` over corpus rows `y`. The search
    is exact and scans every corpus row. Corpus members score exactly 0.

    Parameters
    ----------
    model : ConformanceModel
        A fitted model.
    x : ArrayLike, shape(p,)
        Finite feature vector.

    Returns
    -------
    score : Score
        The conformance value, the minimizing corpus row, and whether the
        value is infinite.

    Raises
    ------
    ValueError
        'x' must be finite and have length `model.feature_dim`.

    """

    x = _check_vector(model, x)
    coeffs = model._projected - x @ model.eigenvectors

    # exact members score exactly 0 despite rounding in the projection
    coeffs[(model.corpus_features == x).all(axis=1)] = 0.

    values = _norms(model, coeffs)
    index = int(np.argmin(values))
    value = float(values[index])

    return Score(value=value, nearest_index=index,
                 out_of_span=bool(np.isinf(value)))


def score_batch(model: ConformanceModel, X: npt.ArrayLike, n_jobs: int = 1,
                progress: bool = False) -> np.ndarray:
    """
    Conformance values for many vectors.

    Parameters
    ----------
    model : ConformanceModel
        A fitted model.
    X : ArrayLike, shape(n, p)
        Feature vectors, one per row.
    n_jobs : int, optional
        Number of joblib workers. The default is 1. Results are always in
        input order and do not depend on the worker count.
    progress : bool, optional
        Show a progress bar. The default is False.

    Returns
    -------
    values : np.ndarray, shape(n,)
        Conformance values, +inf for out-of-span rows.

    """
    from joblib import Parallel, delayed
    from sigworks.utils import ProgressBar

    X = np.array(X, dtype=float)
    if X.ndim == 1 and X.size == 0:
        X = X.reshape(0, model.feature_dim)

    if X.ndim != 2 or X.shape[1] != model.feature_dim:
        raise ValueError(f"'X' must have shape (n, {model.feature_dim}), got"
                         f" {X.shape}.")

    rows = ProgressBar(X, 'conformance', enabled=progress)

    if n_jobs == 1:
        values = [conformance(model, x).value for x in rows]
    else:
        values = Parallel(n_jobs=n_jobs)(
            delayed(_value)(model, x) for x in rows
        )

    logger.debug("Scored %d rows with n_jobs=%d", X.shape[0], n_jobs)

    return np.array(values, dtype=float)


def pipeline_features(streams: Sequence[Stream], meta: dict, n_jobs: int = 1,
                      progress: bool = False) -> np.ndarray:
    """
    Feature matrix from streams and a recorded pipeline.

    Parameters
    ----------
    streams : Sequence[Stream]
        Input streams.
    meta : dict
        Pipeline metadata with keys 'order', 'transforms',
        'parameterization', and 'normalization'.
    n_jobs : int, optional
        Workers for signature computation. The default is 1.
    progress : bool, optional
        Show a progress bar. The default is False.

    Returns
    -------
    features : np.ndarray, shape(len(streams), sig_dim)
        Signature rows in input order.

    """
    from sigworks.signature import signatures
    from sigworks.streams import apply_transforms, min_max_normalize

    params = NormalizationParams.from_dict(meta['normalization'])

    prepared = []
    for s in streams:
        s = apply_transforms(s, meta['transforms'], meta['parameterization'])
        prepared.append(min_max_normalize(s, params))

    return signatures(prepared, meta['order'], n_jobs, progress)


def _value(model: ConformanceModel, x: np.ndarray) -> float:
    return conformance(model, x).value


def _norms(model: ConformanceModel, coeffs: np.ndarray) -> np.ndarray:
    """Row-wise variance norms from eigenbasis coefficients."""

    keep = model._keep

    scale = np.maximum(1., np.linalg.norm(coeffs, axis=1))
    null = np.abs(coeffs[:, ~keep]).max(axis=1, initial=0.)

    quad = (coeffs[:, keep]**2 / model.eigenvalues[keep]).sum(axis=1)

    return np.where(null > model.null_tolerance*scale, np.inf, np.sqrt(quad))


def _check_vector(model: ConformanceModel, x: npt.ArrayLike) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != model.feature_dim:
        raise ValueError(f"'x' must have length {model.feature_dim}, got"
                         f" {x.size}.")
    elif not np.isfinite(x).all():
        raise ValueError("'x' cannot contain non-finite values.")

    return x


def _readonly(values: npt.ArrayLike, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.ndim != ndim:
        raise ValueError(f"Expected a {ndim}D array, got shape={array.shape}.")

    array.setflags(write=False)
    return array
