from __future__ import annotations

import time
import logging

logger = logging.getLogger(__name__)


class Timer:
    """
    Timer utility.

    """

    __slots__ = ('name', '_units', '_level', '_start', '_stop',)

    _scale = {'s': 1., 'min': 60., 'h': 3600.}

    def __init__(self, name: str = 'Elapsed time', units: str = 's',
                 level: int = logging.INFO) -> None:
        """
        Measures the wall time of a `with` block and logs it when the block
        exits. The CLI wraps every subcommand in a timer, so elapsed times
        show up with `--verbose`.

        Parameters
        ----------
        name : str, optional
            Block name used in the log message. The default is
            'Elapsed time'.
        units : str, optional
            Reporting units, from {'s', 'min', 'h'}. The default is 's'.
        level : int, optional
            Logging level of the message. The default is `logging.INFO`.

        Raises
        ------
        ValueError
            Invalid 'units'.

        Examples
        --------
        .. code-block:: python

            import logging
            from sigworks.utils import Timer
            from sigworks.signature import signatures

            logging.basicConfig(level=logging.INFO)

            with Timer('signatures'):
                features = signatures(streams, 3)

        """

        valid = list(self._scale)
        if units not in valid:
            raise ValueError(f"{units=} is invalid; valid values are {valid}.")

        self.name = name
        self._units = units
        self._level = level

        self._start = 0.
        self._stop = 0.

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"Timer(name={self.name!r}, units={self._units!r},"
            f" elapsed={self.elapsed_time!r})"
        )

    def __enter__(self) -> Timer:
        """Store start time when entering "with" block."""
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        """Store stop time when exiting "with" block, and log."""
        self._stop = time.perf_counter()
        elapsed = self.elapsed_time / self._scale[self._units]

        logger.log(self._level, "%s: %.5f %s", self.name, elapsed,
                   self._units)

    @property
    def elapsed_time(self) -> float:
        """
        Return the elapsed time in seconds.

        Returns
        -------
        elapsed : float
            Time difference between entering and exiting a 'with' block. Will
            return zero if it has not yet been used.

        """
        return self._stop - self._start
