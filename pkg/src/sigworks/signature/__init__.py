"""
Truncated path signatures of piecewise-linear streams. Provides the word
basis and its graded-lexicographic indexing, segment exponentials, the Chen
product, stream signatures, and the shuffle product that turns products of
linear signature functionals into linear functionals of a higher order
signature.

"""

from ._words import sig_dim, words, word_index, level_slice
from ._signature import (
    SignatureVector,
    segment_signature,
    chen_product,
    signature,
    signatures,
)
from ._shuffle import ShuffleTable, shuffle_table, shuffle_words, shuffle_apply

__all__ = [
    'sig_dim',
    'words',
    'word_index',
    'level_slice',
    'SignatureVector',
    'segment_signature',
    'chen_product',
    'signature',
    'signatures',
    'ShuffleTable',
    'shuffle_table',
    'shuffle_words',
    'shuffle_apply',
]
