from __future__ import annotations

import copy

from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from typing import Self


class RichResult(dict):
    """Dict-like results container."""

    _order_keys: list[str] = []

    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__

    def __init__(self, **kwargs) -> None:
        """
        Keyword arguments are stored as dictionary items and exposed as
        attributes. Printing gives an aligned, one-field-per-line summary.
        Arrays are abbreviated, lists of streams print as a count, and
        non-finite values are shown as-is since conformance scores may be
        +inf.

        Subclasses set `_order_keys` to fix the field order used by printing
        and by `to_dict`. Keys are compared in lower case. Keys missing from
        the list come last, in insertion order. Listing a key that is never
        set is not an error.

        Parameters
        ----------
        **kwargs : dict, optional
            Fields to store.

        Examples
        --------
        A custom container with a fixed field order:

        .. code-block:: python

            from sigworks.utils import RichResult

            class PairScore(RichResult):
                _order_keys = ['value', 'nearest_index']

            result = PairScore(nearest_index=3, value=float('inf'))
            print(result)
            print(result.to_dict())

        """
        self.update(kwargs)

    def __getattr__(self, name: str) -> Any:
        """Provide attribute-style access to dictionary keys."""
        try:
            return self[name]
        except KeyError as e:
            raise AttributeError(name) from e

    def __repr__(self) -> str:
        if not self:
            return self.__class__.__name__ + '()'

        return '\n' + _format_fields(self._ordered_items()) + '\n'

    def __dir__(self):
        """List available attributes, corresponding to dictionary keys."""
        return sorted(self.keys())

    def _ordered_items(self) -> list[tuple[str, Any]]:
        order = [key.lower() for key in self._order_keys]

        def rank(item):
            name = item[0].lower()
            return order.index(name) if name in order else len(order)

        return sorted(self.items(), key=rank)

    def to_dict(self) -> dict:
        """
        JSON-compatible copy of the fields.

        Arrays become lists, numpy scalars become Python scalars, nested
        results are converted recursively, and infinities are spelled 'inf'
        or '-inf' as in score files. Fields follow `_order_keys`.

        Returns
        -------
        record : dict
            Plain mapping that `json.dumps` accepts with `allow_nan=False`.

        Raises
        ------
        TypeError
            A field has no JSON form, e.g., a list of streams.
        ValueError
            A field contains NaN.

        """
        return {k: _to_json(v) for k, v in self._ordered_items()}

    def copy(self) -> Self:
        """
        Returns a deep copy of the instance.

        Returns
        -------
        result : Self
            New instance that shares no memory with the original.

        """
        return copy.deepcopy(self)


def _to_json(value: Any) -> Any:
    if isinstance(value, RichResult):
        return value.to_dict()
    elif isinstance(value, dict):
        return {str(k): _to_json(v) for k, v in value.items()}
    elif isinstance(value, np.ndarray):
        return _to_json(value.tolist())
    elif isinstance(value, (list, tuple)):
        return [_to_json(v) for v in value]
    elif isinstance(value, np.bool_):
        return bool(value)
    elif value is None or isinstance(value, (str, bool)):
        return value
    elif isinstance(value, (int, np.integer)):
        return int(value)
    elif isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isnan(value):
            raise ValueError("NaN has no JSON form.")
        elif np.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value

    raise TypeError(f"{type(value).__name__} has no JSON form.")


def _format_float_10(x):
    """Returns string representation of floats with exactly ten characters."""
    if np.isposinf(x):
        return '       inf'
    elif np.isneginf(x):
        return '      -inf'
    elif np.isnan(x):
        return '       nan'
    return np.format_float_scientific(x, precision=3, pad_left=2, unique=False)


def _format_fields(items: list[tuple[str, Any]], indent: int = 0) -> str:
    width = max(len(k) for k, _ in items) + 1
    pad = indent + width + 2  # ': '

    lines = []
    for k, v in items:
        text = _format_value(v, pad).replace('\n', '\n' + ' '*pad)
        lines.append(k.rjust(width) + ': ' + text)

    return '\n'.join(lines)


def _format_value(value: Any, indent: int) -> str:
    if isinstance(value, RichResult) and value:
        return '\n' + _format_fields(value._ordered_items())
    elif isinstance(value, np.ndarray):
        return np.array2string(
            value, max_line_width=76 - indent, threshold=12, edgeitems=2,
            formatter={'float_kind': _format_float_10},
        )
    elif isinstance(value, (list, tuple)) and len(value) > 0:
        kinds = {type(v).__name__ for v in value}
        if len(value) > 6 or not kinds <= {'int', 'float', 'str', 'bool'}:
            return f"[{len(value)} x {'|'.join(sorted(kinds))}]"

    return str(value)
