"""
依頻率排程的數字序列
- freq_sequence：第 m 階段輸出 E_m = {e : ⌊mα_e⌉ = ⌊(m-1)α_e⌉ + 1}，依 ≺ 排列
- weave：沿給定的 j 序列交織各系統的條件排程
- deviation：前綴計數與 m·α_e 的最大偏差

⌊·⌉ 採四捨五入（0.5 進位），以整數運算 ⌊(2mp + q) / 2q⌋ 計算 α = p/q。
"""

import logging
from typing import Sequence

import numpy as np

from codec.expansion import Word
from core.errors import HypothesisError, ValidationError
from core.system import Digit
from scheduler.frequency import FrequencyVector

logger = logging.getLogger(__name__)


def _rounded_counts(alpha: FrequencyVector, stages: int) -> np.ndarray:
    """counts[m, e] = ⌊m·α_e⌉，m = 0..stages"""
    m = np.arange(stages + 1, dtype=object if stages > 10**8 else np.int64)
    columns = []
    for a in alpha.exact:
        p, q = a.numerator, a.denominator
        if 2 * stages * p + q >= 2**62:
            col = np.array([(2 * i * p + q) // (2 * q) for i in range(stages + 1)], dtype=object)
        else:
            col = (2 * m * p + q) // (2 * q)
        columns.append(col)
    return np.stack(columns, axis=1)


def schedule_indices(alpha: FrequencyVector, n: int) -> np.ndarray:
    """排程結果的 digit 索引（相對於 alpha.digits）"""
    if n < 0:
        raise ValidationError(f"length must be nonnegative, got {n}", "n")
    if n == 0:
        return np.zeros(0, dtype=np.int64)

    # Σ_e ⌊mα_e⌉ ≥ m - 𝔪/2，因此 n + 𝔪 個階段足夠
    stages = n + alpha.size + 1
    counts = _rounded_counts(alpha, stages)
    emitted = np.diff(counts, axis=0).astype(np.int64)
    if emitted.max(initial=0) > 1:
        raise ValidationError("frequency component exceeds 1", "alpha")

    stage_idx, digit_idx = np.nonzero(emitted)
    # np.nonzero 已依 (階段, ≺) 排序
    if len(digit_idx) < n:
        raise AssertionError(f"scheduler emitted {len(digit_idx)} < {n} digits in {stages} stages")
    return digit_idx[:n].astype(np.int64)


def freq_sequence(alpha: FrequencyVector, n: int) -> Word:
    """長度 n 的排程字詞"""
    indices = schedule_indices(alpha, n)
    digits = tuple(alpha.digits[i] for i in indices)
    logger.debug(f"Scheduled {n} digits over {alpha.size} symbols")
    return Word(digits=digits, family=alpha.family)


def weave(jseq: Sequence[int], alpha: FrequencyVector, n: int) -> Word:
    """
    交織排程

    第 ℓ 個位置使用 j_ℓ 系統條件排程中的第 τ̃(j_ℓ, ℓ) 個數字，
    τ̃ 為 j_ℓ 在 jseq 前 ℓ 項中出現的次數。第一座標恆等於 jseq。
    """
    if len(jseq) < n:
        raise ValidationError(f"j-sequence has {len(jseq)} < {n} entries", "jseq")
    jseq = [int(j) for j in jseq[:n]]

    strands: dict[int, np.ndarray] = {}
    conditionals: dict[int, FrequencyVector] = {}
    for j in sorted(set(jseq)):
        try:
            conditionals[j] = alpha.conditional(j)
        except HypothesisError:
            raise HypothesisError(
                f"undefined conditional frequencies: system {j} occurs but alpha_j = 0", "alpha"
            ) from None
        strands[j] = schedule_indices(conditionals[j], jseq.count(j))

    used = {j: 0 for j in strands}
    digits: list[Digit] = []
    for j in jseq:
        digits.append(conditionals[j].digits[strands[j][used[j]]])
        used[j] += 1

    return Word(digits=tuple(digits), family=alpha.family)


def _digit_indices(digits: Sequence[Digit], alpha: FrequencyVector) -> np.ndarray:
    """字詞轉為 alpha.digits 中的索引"""
    if len(digits) == 0:
        return np.zeros(0, dtype=np.int64)
    pairs = np.asarray(digits, dtype=np.int64).reshape(-1, 2)
    known = np.asarray(alpha.digits, dtype=np.int64)
    width = int(max(pairs[:, 1].max(), known[:, 1].max())) + 1
    keys = pairs[:, 0] * width + pairs[:, 1]
    known_keys = known[:, 0] * width + known[:, 1]
    order = np.argsort(known_keys)
    pos = np.searchsorted(known_keys[order], keys)
    pos = np.clip(pos, 0, len(order) - 1)
    found = known_keys[order][pos] == keys
    if not found.all():
        bad = tuple(pairs[np.argmin(found)])
        raise ValidationError(f"digit {bad} not in frequency vector", "word")
    return order[pos]


def deviation_of_indices(indices: np.ndarray, values: np.ndarray) -> float:
    """索引序列相對於頻率 values 的最大前綴偏差"""
    if len(indices) == 0:
        return 0.0
    m = np.arange(1, len(indices) + 1)
    worst = 0.0
    for i, a in enumerate(values):
        counts = np.cumsum(indices == i)
        worst = max(worst, float(np.max(np.abs(counts - m * a))))
    return worst


def deviation(word: Word, alpha: FrequencyVector) -> float:
    """max_{e, m ≤ |word|} |count_e(m) − m·α_e|"""
    return deviation_of_indices(_digit_indices(word.digits, alpha), alpha.values)


def conditional_deviation(word: Word, alpha: FrequencyVector) -> dict[int, float]:
    """每個 α_j > 0 的系統，在其自身時鐘上相對條件頻率的偏差"""
    result = {}
    for j in alpha.systems:
        strand = [e for e in word.digits if e[0] == j]
        if not strand or alpha.exact_marginals[j] == 0:
            continue
        result[j] = deviation(Word(digits=tuple(strand)), alpha.conditional(j))
    return result


def marginal_deviation(jseq: Sequence[int], alpha: FrequencyVector) -> float:
    """max_{j, m} |#{i ≤ m : j_i = j} − m·α_j|，有限前綴上的 W(α) 診斷"""
    if len(jseq) == 0:
        return 0.0
    marginals = alpha.marginals
    jarr = np.asarray(jseq, dtype=np.int64)
    if jarr.min() < 0 or jarr.max() >= len(marginals):
        raise ValidationError("j-sequence entry out of range", "jseq")
    hits = np.zeros((len(jarr), len(marginals)))
    hits[np.arange(len(jarr)), jarr] = 1.0
    counts = np.cumsum(hits, axis=0)
    m = np.arange(1, len(jarr) + 1)[:, None]
    return float(np.max(np.abs(counts - m * marginals[None, :])))
