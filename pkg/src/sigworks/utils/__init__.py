"""
Helpers shared by the other subpackages: result containers with readable
printing (`RichResult`, `RichTable`), a tqdm progress bar for batch loops,
and a timer that logs elapsed wall time.

"""

from ._timer import Timer
from ._rich_table import RichTable
from ._rich_result import RichResult
from ._progress_bar import ProgressBar

__all__ = [
    'Timer',
    'RichTable',
    'RichResult',
    'ProgressBar',
]
