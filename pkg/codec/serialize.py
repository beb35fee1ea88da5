"""
字詞與數字三元組的 JSON 表示
- 字詞：[[j,k], ...]
- 三元組：[[s,K,t], ...]
"""

import json
from typing import Union

from codec.expansion import DecodedPoint, DigitTriples, Word
from core.errors import ValidationError
from core.system import GlsFamily


def word_to_json(word: Word) -> list[list[int]]:
    return [[j, k] for j, k in word.digits]


def word_from_json(data: Union[str, list], family: GlsFamily) -> Word:
    """解析 [[j,k], ...]，字串會先以 JSON 解析"""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed JSON: {e.msg}", "word") from None
    if not isinstance(data, list):
        raise ValidationError("must be a list of [j,k] pairs", "word")

    digits = []
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise ValidationError(f"expected [j,k] integers, got {pair!r}", f"word[{i}]")
        digits.append((pair[0], pair[1]))

    return Word(digits=tuple(digits), family=family)


def jseq_from_json(data: Union[str, list]) -> tuple[int, ...]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed JSON: {e.msg}", "jseq") from None
    if not isinstance(data, list) or not all(
        isinstance(j, int) and not isinstance(j, bool) for j in data
    ):
        raise ValidationError("must be a list of integers", "jseq")
    return tuple(data)


def triples_to_json(triples: DigitTriples) -> list[list[float]]:
    return [[s, K, t] for s, K, t in triples.triples]


def decoded_to_json(point: DecodedPoint) -> dict:
    return {
        "w": point.w,
        "x": point.x,
        "w_width": point.w_width,
        "x_width": point.x_width,
        "w_interval": list(point.w_interval),
        "x_interval": list(point.x_interval),
    }
