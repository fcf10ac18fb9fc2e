from __future__ import annotations

from typing import Iterable

from tqdm import tqdm


class ProgressBar(tqdm):
    """Progress bar for batch loops."""

    def __init__(self, iterable: Iterable, desc: str | None = None,
                 enabled: bool = True, total: int | None = None,
                 **kwargs) -> None:
        """
        Wraps `tqdm` with defaults for loops over streams or feature rows.
        The bar writes to stderr, is 80 columns wide, and is cleared when
        the loop ends. With `enabled=False` iteration is passed straight
        through, so batch functions can wrap their loop unconditionally and
        forward their `progress` flag.

        Parameters
        ----------
        iterable : Iterable
            Items to iterate over, e.g., streams or feature rows.
        desc : str or None, optional
            Prefix description, by default None.
        enabled : bool, optional
            Draw the bar. The default is True.
        total : int or None, optional
            Number of expected iterations. Use when 'iterable' is a
            generator, otherwise the bar has no ETA.
        **kwargs : dict, optional
            Additional keyword arguments to pass through to `tqdm`.

        Raises
        ------
        ValueError
            'iterable' cannot be None.

        Examples
        --------
        .. code-block:: python

            from sigworks.utils import ProgressBar
            from sigworks.signature import signature

            rows = [signature(s, 3) for s in ProgressBar(streams, 'streams')]

        """

        if iterable is None:
            raise ValueError("'iterable' cannot be None.")

        kwargs.setdefault('ncols', 80)
        kwargs.setdefault('leave', False)
        kwargs.setdefault('unit', 'it')
        kwargs.setdefault('ascii', ' 2468█')

        super().__init__(iterable, desc=desc, total=total,
                         disable=not enabled, **kwargs)
