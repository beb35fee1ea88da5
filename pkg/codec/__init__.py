"""
Codec 模組
"""

from .expansion import (
    DecodedPoint,
    DigitTriples,
    Word,
    decode,
    encode,
    frequencies,
    series_partial_sum,
    to_triples,
    w_to_jseq,
)
from .serialize import (
    decoded_to_json,
    jseq_from_json,
    triples_to_json,
    word_from_json,
    word_to_json,
)

__all__ = [
    "DecodedPoint",
    "DigitTriples",
    "Word",
    "decode",
    "decoded_to_json",
    "encode",
    "frequencies",
    "jseq_from_json",
    "series_partial_sum",
    "to_triples",
    "triples_to_json",
    "w_to_jseq",
    "word_from_json",
    "word_to_json",
]
