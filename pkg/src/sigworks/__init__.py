"""
Summary
=======
`sigworks` detects anomalous streamed data. Streams are mapped to truncated
path signatures and scored with the conformance distance, i.e., the variance
norm (dual norm of the corpus covariance) to the nearest member of a corpus
of normal streams. The package also provides stream transformations, split
half calibration, dataset ingestion for common benchmarks, and evaluation
metrics. A command-line interface is available after installation, run
`sigworks -h` in your terminal for a list of subcommands.

Note: `sigworks` is in early development. The API may change as it matures.

Accessing the Documentation
---------------------------
Documentation is accessible via Python's `help()` function which prints
docstrings from a package, module, function, class, etc.

"""

from typing import TYPE_CHECKING

from ._core import (
    Stream,
    NormalizationParams,
    DataError,
    ConfigError,
    read_streams,
    write_streams,
)

__version__ = '0.1.0.dev0'

__all__ = [
    'Stream',
    'NormalizationParams',
    'DataError',
    'ConfigError',
    'read_streams',
    'write_streams',
    'streams',
    'signature',
    'conformance',
    'datasets',
    'metrics',
    'utils',
    'mathutils',
]

if TYPE_CHECKING:  # pragma: no cover
    from sigworks import (
        streams, signature, conformance, datasets, metrics, utils, mathutils,
    )


# Lazily load submodules/subpackages
_lazy_modules = {
    'streams': 'sigworks.streams',
    'signature': 'sigworks.signature',
    'conformance': 'sigworks.conformance',
    'datasets': 'sigworks.datasets',
    'metrics': 'sigworks.metrics',
    'utils': 'sigworks.utils',
    'mathutils': 'sigworks.mathutils',
}


def __getattr__(name):
    import importlib

    if name in _lazy_modules:
        module = importlib.import_module(_lazy_modules[name])
        globals()[name] = module  # cache for later
        return module

    raise AttributeError(f"module {__name__} has no attribute {name}")


def __dir__():
    return list(globals()) + list(_lazy_modules)
