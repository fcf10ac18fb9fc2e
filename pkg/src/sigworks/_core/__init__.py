"""
Core Subpackage
---------------
Types and helpers that every other subpackage depends on: the `Stream` data
model, Min-Max normalization parameters, the stream interchange reader and
writer, and the package exceptions. Everything here is re-exported at the
base level of the package.

"""

from ._errors import DataError, ConfigError
from ._stream import Stream, NormalizationParams
from ._read import read_streams, write_streams

__all__ = [
    'Stream',
    'NormalizationParams',
    'DataError',
    'ConfigError',
    'read_streams',
    'write_streams',
]
