from __future__ import annotations

import json

from typing import TYPE_CHECKING, Iterable

from ._stream import Stream
from ._errors import DataError

if TYPE_CHECKING:  # pragma: no cover
    from os import PathLike


def read_streams(filepath: PathLike) -> list[Stream]:
    """
    Read a stream interchange file.

    The interchange format is newline-delimited JSON. Each non-blank line is
    one record with the fields 'id' (string), 'label' (optional string),
    'timestamps' (optional array of reals), and 'points' (array of arrays of
    reals). See the user guide for the full schema.

    Parameters
    ----------
    filepath : PathLike
        Path to the interchange file.

    Returns
    -------
    streams : list[Stream]
        Streams in file order. An empty file gives an empty list.

    Raises
    ------
    DataError
        A record could not be parsed. The message includes the line number.

    """

    streams = []
    with open(filepath, encoding='utf-8') as datafile:
        for lineno, line in enumerate(datafile, start=1):
            if not line.strip():
                continue

            try:
                record = json.loads(line)
                streams.append(Stream.from_dict(record))
            except (ValueError, TypeError, AttributeError) as e:
                raise DataError(
                    f"Malformed stream record in {filepath}, line {lineno}:"
                    f" {e}"
                ) from e

    return streams


def write_streams(filepath: PathLike, streams: Iterable[Stream]) -> int:
    """
    Write streams to an interchange file.

    Parameters
    ----------
    filepath : PathLike
        Output path. Existing files are overwritten.
    streams : Iterable[Stream]
        Streams to write, one record per line.

    Returns
    -------
    count : int
        Number of records written.

    """

    count = 0
    with open(filepath, 'w', encoding='utf-8') as datafile:
        for stream in streams:
            datafile.write(json.dumps(stream.to_dict()) + '\n')
            count += 1

    return count
