"""
冗餘 GLS 展開的編碼與解碼
- w_to_jseq：w 的驅動系統編碼（邊界點取結尾為 0 的序列）
- encode：沿給定 j 序列以反分支迭代求 k
- decode：組合影像的中點與寬度上界
- 級數形式 Σ (−1)^{Σ s_i} t_m / Π K_i 只作為交叉檢查
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from core.errors import ValidationError
from core.system import (
    Digit,
    DigitTriple,
    GlsFamily,
    compose_w_interval,
    compose_x_interval,
    digit_set,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Word:
    """E 上的有限字詞"""

    digits: tuple[Digit, ...]
    family: Optional[GlsFamily] = None

    def __post_init__(self):
        if self.family is not None:
            for e in self.digits:
                self.family.index_of(e)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    @property
    def jseq(self) -> tuple[int, ...]:
        return tuple(j for j, _ in self.digits)

    def require_family(self) -> GlsFamily:
        if self.family is None:
            raise ValidationError("word is not bound to a family", "word")
        return self.family


class DigitTriples(NamedTuple):
    """(s_m, K_m, t_m) 序列"""

    triples: tuple[DigitTriple, ...]


class DecodedPoint(NamedTuple):
    """解碼結果：中點、區間與寬度上界"""

    w: float
    x: float
    w_width: float
    x_width: float
    w_interval: tuple[float, float]
    x_interval: tuple[float, float]


def w_to_jseq(family: GlsFamily, w: float, n: int) -> tuple[int, ...]:
    """
    驅動系統的貪婪編碼

    每步取 w 所在的 [Σ_{i<j} p_i, Σ_{i≤j} p_i)（最後一格閉），
    邊界點因此得到結尾為 0 的序列。
    """
    if not 0.0 <= w <= 1.0:
        raise ValidationError(f"must lie in [0,1], got {w}", "w")

    # 累積端點 Σ_{i≤j} p_i，最後一個固定為 1
    upper = np.append(family.offsets[1:], 1.0)
    jseq = []
    for _ in range(n):
        j = int(np.searchsorted(upper, w, side="right"))
        j = min(j, family.J - 1)
        jseq.append(j)
        w = (w - family.offsets[j]) / family.p[j]
        w = min(max(w, 0.0), 1.0)
    return tuple(jseq)


def encode(family: GlsFamily, jseq: Sequence[int], x: float, n: int) -> Word:
    """沿 jseq 編碼 x，取前 n 個數字"""
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"must lie in [0,1], got {x}", "x")
    if len(jseq) < n:
        raise ValidationError(f"j-sequence has {len(jseq)} < {n} entries", "jseq")

    digits = []
    for m in range(n):
        j = int(jseq[m])
        if not 0 <= j < family.J:
            raise ValidationError(f"system {j} out of range 0..{family.J - 1}", f"jseq[{m}]")
        system = family.systems[j]
        k = system.cell_of(x)
        digits.append((j, k))
        x = system.inverse_h(k, x)

    return Word(digits=tuple(digits), family=family)


def decode(word: Word) -> DecodedPoint:
    """組合影像 [0,1]² 的中點，寬度為 Π p 與 Π l"""
    family = word.require_family()
    if len(word) == 0:
        raise ValidationError("cannot decode an empty word", "word")

    w_interval = compose_w_interval(family, word.jseq)
    x_interval = compose_x_interval(family, word.digits)
    idx = [family.index_of(e) for e in word.digits]

    return DecodedPoint(
        w=(w_interval[0] + w_interval[1]) / 2,
        x=(x_interval[0] + x_interval[1]) / 2,
        w_width=float(np.prod(family.digit_p[idx])),
        x_width=float(np.prod(family.digit_l[idx])),
        w_interval=w_interval,
        x_interval=x_interval,
    )


def to_triples(word: Word) -> DigitTriples:
    """逐項查表轉為 GLS 數字 (s, K, t)"""
    family = word.require_family()
    table = digit_set(family)
    return DigitTriples(triples=tuple(table[family.index_of(e)] for e in word.digits))


def series_partial_sum(triples: DigitTriples | Sequence[DigitTriple]) -> float:
    """Σ_m (−1)^{Σ_{i<m} s_i} t_m / Π_{i<m} K_i"""
    items = triples.triples if isinstance(triples, DigitTriples) else tuple(triples)
    if not items:
        raise ValidationError("series needs at least one term", "triples")

    total, sign, scale = 0.0, 1, 1.0
    for s, K, t in items:
        total += sign * t / scale
        sign = -sign if s else sign
        scale *= K
    return total


def frequencies(word: Word):
    """經驗頻率向量 τ_e(ω, n)"""
    from scheduler.frequency import FrequencyVector

    if len(word) == 0:
        raise ValidationError("frequencies of an empty word are undefined", "word")

    digits = word.family.digits if word.family is not None else tuple(sorted(set(word.digits)))
    counts = {e: 0 for e in digits}
    for e in word.digits:
        counts[e] += 1
    n = len(word)
    return FrequencyVector(
        digits=digits,
        exact=tuple(Fraction(counts[e], n) for e in digits),
        family=word.family,
    )
