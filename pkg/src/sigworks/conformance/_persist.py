from __future__ import annotations

import json

from typing import TYPE_CHECKING

from sigworks._core import DataError
from ._model import ConformanceModel
from ._tables import Calibration

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

SCHEMA = 'sigworks.conformance-model'
SCHEMA_VERSION = 1


def save_model(filepath: PathLike, model: ConformanceModel,
               run_config: dict | None = None) -> None:
    """
    Write a model file.

    The file is a single JSON document. Floats are written with `repr`
    precision, so `load_model` restores every array exactly and scores
    computed from the loaded model match the in-memory model bit for bit.
    Saving the same model twice gives byte-identical files.

    Parameters
    ----------
    filepath : PathLike
        Output path. Existing files are overwritten.
    model : ConformanceModel
        Model to save. `model.calibration` is included when present.
    run_config : dict or None, optional
        Run configuration to record alongside the model. The default is None.

    """

    calibration = model.calibration
    document = {
        'schema': SCHEMA,
        'version': SCHEMA_VERSION,
        'feature_dim': model.feature_dim,
        'n_corpus': model.n_corpus,
        'spectral_cutoff': model.spectral_cutoff,
        'null_tolerance': model.null_tolerance,
        'pipeline_meta': model.pipeline_meta,
        'run_config': run_config,
        'calibration': None if calibration is None else calibration.to_dict(),
        'mean': model.mean.tolist(),
        'eigenvalues': model.eigenvalues.tolist(),
        'eigenvectors': model.eigenvectors.tolist(),
        'corpus_features': model.corpus_features.tolist(),
    }

    with open(filepath, 'w', encoding='utf-8') as modelfile:
        json.dump(document, modelfile, allow_nan=False)
        modelfile.write('\n')


def load_model(filepath: PathLike) -> ConformanceModel:
    """
    Read a model file written by `save_model`.

    Parameters
    ----------
    filepath : PathLike
        Path to the model file.

    Returns
    -------
    model : ConformanceModel
        The restored model, with `calibration` set when the file has one.

    Raises
    ------
    DataError
        The file is not valid JSON, has the wrong schema or version, or its
        arrays are inconsistent.

    """

    try:
        with open(filepath, encoding='utf-8') as modelfile:
            document = json.load(modelfile)
    except json.JSONDecodeError as e:
        raise DataError(f"Model file {filepath} is not valid JSON: {e}") from e

    if not isinstance(document, dict) or document.get('schema') != SCHEMA:
        raise DataError(f"{filepath} is not a sigworks model file.")
    elif document.get('version') != SCHEMA_VERSION:
        raise DataError(f"Unsupported model file version"
                        f" {document.get('version')!r}, expected"
                        f" {SCHEMA_VERSION}.")

    calibration = document.get('calibration')
    if calibration is not None:
        calibration = Calibration.from_dict(calibration)

    try:
        return ConformanceModel(
            document['mean'],
            document['eigenvalues'],
            document['eigenvectors'],
            document['corpus_features'],
            document['spectral_cutoff'],
            document['null_tolerance'],
            document.get('pipeline_meta'),
            calibration,
        )
    except (KeyError, ValueError) as e:
        raise DataError(f"Inconsistent model file {filepath}: {e}") from e
