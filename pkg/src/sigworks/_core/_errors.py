class DataError(ValueError):
    """Malformed, inconsistent, or insufficient input data."""


class ConfigError(ValueError):
    """Invalid run configuration values or keys."""
