from __future__ import annotations

import copy

from typing import TYPE_CHECKING, Any

from sigworks._core import ConfigError
from sigworks.streams import TRANSFORMS
from sigworks.datasets import AIS_COLUMNS

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike

_DEFAULTS = {
    'order': 3,
    'transforms': [],
    'normalization': 'none',
    'parameterization': 'uniform',
    'spectral_cutoff': 1e-10,
    'null_tolerance': 1e-8,
    'epsilon': 0.05,
    'seed': 0,
    'n_jobs': 1,
    'bootstrap': 1000,
    'ais_columns': dict(AIS_COLUMNS),
    'compress_m': 10.,
    'min_displacement_m': 5000.,
    'segment_m': 4000.,
    'segments_m': [4000., 8000., 16000., 32000.],
    'max_gap_m': 1000.,
    'sample_size': 5000,
    'measure': 'path',
    'synthetic_hours': 24.,
    'anomaly_rate': 0.001,
    'n_splits': 10,
    'normal_class': None,
}


class RunConfig:
    """Run configuration."""

    __slots__ = ('_values',)

    def __init__(self, **values) -> None:
        """
        Every setting a run depends on, with defaults. Load from a YAML
        mapping with `from_yaml`, override with `update`, and record with
        `to_dict`. Settings are read as attributes, e.g., `config.order`.

        Parameters
        ----------
        **values : dict, optional
            Settings to change from their defaults. Valid keys and defaults
            are:

            ================== ==========================================
            Key                Default
            ================== ==========================================
            order              3
            transforms         [] (from time, time-diff, lead-lag,
                               invisibility)
            normalization      'none' (or 'per-stream', 'corpus')
            parameterization   'uniform' (or 'from-timestamps')
            spectral_cutoff    1e-10
            null_tolerance     1e-8
            epsilon            0.05
            seed               0
            n_jobs             1 (or -1 for all cores)
            bootstrap          1000
            ais_columns        MMSI, BaseDateTime, LAT, LON, Length
            compress_m         10
            min_displacement_m 5000
            segment_m          4000
            segments_m         [4000, 8000, 16000, 32000] (reproduce)
            max_gap_m          1000
            sample_size        5000
            measure            'path' (or 'displacement')
            synthetic_hours    24
            anomaly_rate       0.001
            n_splits           10
            normal_class       None (most frequent class)
            ================== ==========================================

        Raises
        ------
        ConfigError
            Unknown keys or invalid values.

        """
        object.__setattr__(self, '_values', copy.deepcopy(_DEFAULTS))
        self.update(**values)

    def __getattr__(self, name: str) -> Any:
        values = object.__getattribute__(self, '_values')
        if name in values:
            return values[name]
        raise AttributeError(name)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Use 'update' to change settings.")

    def __repr__(self) -> str:
        summary = ', '.join(f"{k}={v!r}" for k, v in self._values.items())
        return f"RunConfig({summary})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self._values == other._values

    @classmethod
    def from_yaml(cls, filepath: PathLike) -> RunConfig:
        """
        Load settings from a YAML mapping.

        Parameters
        ----------
        filepath : PathLike
            Path to a YAML file. An empty file gives the defaults.

        Returns
        -------
        config : RunConfig
            Defaults updated with the file's settings.

        Raises
        ------
        ConfigError
            Unreadable YAML, a non-mapping document, unknown keys, or
            invalid values.

        """
        import yaml

        try:
            with open(filepath, encoding='utf-8') as yamlfile:
                values = yaml.safe_load(yamlfile)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {filepath}: {e}") from e

        if values is None:
            values = {}
        elif not isinstance(values, dict):
            raise ConfigError(f"{filepath} must contain a mapping of"
                              " settings.")

        return cls(**values)

    def update(self, **overrides) -> RunConfig:
        """
        Change settings in place. None values are ignored so unset
        command-line flags never override file settings.

        Parameters
        ----------
        **overrides : dict, optional
            New values by key.

        Returns
        -------
        config : RunConfig
            The same instance, for chaining.

        Raises
        ------
        ConfigError
            Unknown keys or invalid values. No setting is changed when an
            error is raised.

        """

        unknown = set(overrides) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"Unknown settings {sorted(unknown)}; valid"
                              f" keys are {sorted(_DEFAULTS)}.")

        values = copy.deepcopy(self._values)
        for key, value in overrides.items():
            if value is None:
                continue
            elif key == 'ais_columns':
                if not isinstance(value, dict):
                    raise ConfigError("'ais_columns' must be a mapping.")
                value = {**values['ais_columns'], **value}

            values[key] = value

        _validate(values)
        object.__setattr__(self, '_values', values)

        return self

    def to_dict(self) -> dict:
        """Copy of all settings, suitable for manifests and model files."""
        return copy.deepcopy(self._values)


_FLOATS = {
    'epsilon': (0., 1., '(0, 1]'),
    'anomaly_rate': (0., 1., '[0, 1)'),
    'spectral_cutoff': (0., None, '[0, inf)'),
    'null_tolerance': (0., None, '[0, inf)'),
    'compress_m': (0., None, '[0, inf)'),
    'min_displacement_m': (0., None, '[0, inf)'),
    'segment_m': (0., None, '(0, inf)'),
    'max_gap_m': (0., None, '(0, inf)'),
    'synthetic_hours': (0., None, '(0, inf)'),
}

_INTS = {
    'order': 1,
    'seed': 0,
    'n_jobs': None,
    'bootstrap': 1,
    'sample_size': 1,
    'n_splits': 1,
}


def _validate(values: dict) -> None:

    # yaml 1.1 reads exponents without a dot, e.g., 1e-10, as strings
    for key, (lo, hi, interval) in _FLOATS.items():
        try:
            value = float(values[key])
        except (TypeError, ValueError):
            raise ConfigError(f"'{key}' must be a number in {interval}, got"
                              f" {values[key]!r}.") from None

        above = value > lo if interval[0] == '(' else value >= lo
        below = hi is None or (value <= hi if interval[-1] == ']'
                               else value < hi)
        if not (above and below):
            raise ConfigError(f"'{key}' must be in {interval}, got {value}.")

        values[key] = value

    for key, minimum in _INTS.items():
        value = values[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"'{key}' must be an int, got {value!r}.")
        elif minimum is not None and value < minimum:
            raise ConfigError(f"'{key}' must be >= {minimum}, got {value}.")

    if not (values['n_jobs'] >= 1 or values['n_jobs'] == -1):
        raise ConfigError(f"'n_jobs' must be positive or -1, got"
                          f" {values['n_jobs']}.")

    segments = values['segments_m']
    try:
        segments = [float(v) for v in segments] \
            if isinstance(segments, list) else []
    except (TypeError, ValueError):
        segments = []
    if not segments or min(segments) <= 0.:
        raise ConfigError(f"'segments_m' must be a nonempty list of positive"
                          f" lengths, got {values['segments_m']!r}.")
    values['segments_m'] = segments

    transforms = values['transforms']
    if not isinstance(transforms, list) \
            or not set(transforms).issubset(TRANSFORMS):
        raise ConfigError(f"'transforms' must be a list drawn from"
                          f" {list(TRANSFORMS)}, got {transforms!r}.")

    choices = {
        'normalization': ['none', 'per-stream', 'corpus'],
        'parameterization': ['uniform', 'from-timestamps'],
        'measure': ['path', 'displacement'],
    }
    for key, valid in choices.items():
        if values[key] not in valid:
            raise ConfigError(f"{key}={values[key]!r} is invalid; valid"
                              f" values are {valid}.")

    columns = values['ais_columns']
    if set(columns) != set(AIS_COLUMNS):
        raise ConfigError(f"'ais_columns' must map exactly the keys"
                          f" {sorted(AIS_COLUMNS)}.")

    if values['normal_class'] is not None:
        values['normal_class'] = str(values['normal_class'])
