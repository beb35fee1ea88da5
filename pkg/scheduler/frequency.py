"""
頻率向量 α = (α_e)
- 以精確分數保存，排程器的四捨五入不受浮點誤差影響
- 文字格式與關鍵字檔相同：每行或以空白/逗號分隔的 "j,k:value"，# 開頭為註解
"""

import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Mapping, Optional

import numpy as np

import config
from core.errors import HypothesisError, ValidationError
from core.system import Digit, GlsFamily, to_fraction

logger = logging.getLogger(__name__)

_PAIR_PATTERN = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*:\s*(\S+)\s*$")


@dataclass(frozen=True)
class FrequencyVector:
    """α_e ≥ 0，總和為 1；digits 決定 ≺ 順序"""

    digits: tuple[Digit, ...]
    exact: tuple[Fraction, ...]
    family: Optional[GlsFamily] = None

    def __post_init__(self):
        if len(self.digits) != len(self.exact):
            raise ValidationError("digits and values differ in length", "alpha")
        if not self.digits:
            raise ValidationError("frequency vector is empty", "alpha")
        if len(set(self.digits)) != len(self.digits):
            raise ValidationError("duplicate digit", "alpha")
        for e, a in zip(self.digits, self.exact):
            if a < 0:
                raise ValidationError(f"negative frequency {a}", f"alpha[{e[0]},{e[1]}]")
        total = sum(self.exact)
        if abs(total - 1) > Fraction(config.VALIDATION_TOL):
            raise ValidationError(f"frequencies sum to {float(total)!r}, not 1", "alpha")

    @cached_property
    def values(self) -> np.ndarray:
        return np.array([float(a) for a in self.exact])

    @property
    def size(self) -> int:
        return len(self.digits)

    def __getitem__(self, e: Digit) -> float:
        return float(self.exact_of(e))

    def exact_of(self, e: Digit) -> Fraction:
        try:
            return self.exact[self.digits.index(tuple(e))]
        except ValueError:
            raise ValidationError(f"unknown digit {e!r}", "alpha") from None

    @cached_property
    def systems(self) -> tuple[int, ...]:
        return tuple(sorted({j for j, _ in self.digits}))

    @cached_property
    def exact_marginals(self) -> dict[int, Fraction]:
        """α_j = Σ_k α_{(j,k)}"""
        marginals = {j: Fraction(0) for j in self.systems}
        for (j, _), a in zip(self.digits, self.exact):
            marginals[j] += a
        return marginals

    @cached_property
    def marginals(self) -> np.ndarray:
        """依 j = 0..J-1 排列的邊際頻率"""
        J = self.family.J if self.family is not None else max(self.systems) + 1
        result = np.zeros(J)
        for j, a in self.exact_marginals.items():
            result[j] = float(a)
        return result

    def conditional(self, j: int) -> "FrequencyVector":
        """(α_{(j,k)}/α_j)_k"""
        alpha_j = self.exact_marginals.get(j, Fraction(0))
        if alpha_j == 0:
            raise HypothesisError(
                f"undefined conditional frequencies: marginal of system {j} is zero", "alpha"
            )
        pairs = [(e, a / alpha_j) for e, a in zip(self.digits, self.exact) if e[0] == j]
        return FrequencyVector(
            digits=tuple(e for e, _ in pairs), exact=tuple(a for _, a in pairs), family=None
        )

    def require_positive_marginals(self) -> None:
        """纖維公式需要每個 α_j > 0"""
        J = self.family.J if self.family is not None else len(self.systems)
        zero = [j for j in range(J) if self.exact_marginals.get(j, 0) == 0]
        if zero:
            raise HypothesisError(
                f"fibre formulas need every marginal alpha_j > 0; zero for systems {zero}",
                "alpha",
            )

    def to_dict(self) -> dict[str, str]:
        """JSON 以 "j,k" 為鍵"""
        return {f"{j},{k}": str(a) for (j, k), a in zip(self.digits, self.exact)}


def _snap(raw: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """逐項約分；若約分後總和不再恰為 1，改用 1/MAX_DENOMINATOR 格點並把殘差放在最大項"""
    limited = tuple(a.limit_denominator(config.MAX_DENOMINATOR) for a in raw)
    if sum(limited) == 1 or any(a < 0 for a in raw):
        return limited
    if abs(sum(raw) - 1) > Fraction(config.VALIDATION_TOL):
        return limited

    scale = config.MAX_DENOMINATOR
    counts = [round(a * scale) for a in raw]
    largest = max(range(len(counts)), key=counts.__getitem__)
    counts[largest] += scale - sum(counts)
    logger.debug(f"Snapped {len(counts)} frequencies to 1/{scale} grid")
    return tuple(Fraction(c, scale) for c in counts)


def from_values(digits, values, family: Optional[GlsFamily] = None) -> FrequencyVector:
    """以 ≺ 順序的 digits 與對應數值建立；總和檢查用未約分的值"""
    digits = tuple(tuple(e) for e in digits)
    raw = tuple(to_fraction(v, f"alpha[{e[0]},{e[1]}]") for e, v in zip(digits, values))
    return FrequencyVector(digits=digits, exact=_snap(raw), family=family)


def from_mapping(family: GlsFamily, mapping: Mapping[Digit, object]) -> FrequencyVector:
    """未列出的數字頻率為 0"""
    for e in mapping:
        family.index_of(e)
    values = [mapping.get(e, 0) for e in family.digits]
    return from_values(family.digits, values, family)


def uniform(family: GlsFamily) -> FrequencyVector:
    share = Fraction(1, family.size)
    return FrequencyVector(digits=family.digits, exact=(share,) * family.size, family=family)


def lebesgue(family: GlsFamily) -> FrequencyVector:
    """α_e = p_j·l_e，對應平面 Lebesgue 測度"""
    exact = tuple(
        family.weights[j] * (family.systems[j].partition[k + 1] - family.systems[j].partition[k])
        for j, k in family.digits
    )
    return FrequencyVector(digits=family.digits, exact=exact, family=family)


def point_mass(family: GlsFamily, e: Digit) -> FrequencyVector:
    target = family.digits[family.index_of(e)]
    exact = tuple(Fraction(int(d == target)) for d in family.digits)
    return FrequencyVector(digits=family.digits, exact=exact, family=family)


def parse_alpha(text: str, family: GlsFamily) -> FrequencyVector:
    """
    解析頻率向量

    接受 JSON 物件 {"j,k": value} 或文字格式 "j,k:value"（空白或換行分隔，# 為註解）
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed JSON: {e.msg}", "alpha") from None
        tokens = [f"{key}:{value}" for key, value in data.items()]
    else:
        tokens = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                tokens.extend(line.split())

    mapping: dict[Digit, object] = {}
    for token in tokens:
        match = _PAIR_PATTERN.match(token)
        if not match:
            raise ValidationError(f"cannot parse entry {token!r}, expected j,k:value", "alpha")
        e = (int(match.group(1)), int(match.group(2)))
        if e in mapping:
            raise ValidationError(f"digit {e} given twice", "alpha")
        mapping[e] = match.group(3)

    alpha = from_mapping(family, mapping)
    logger.debug(f"Parsed frequency vector over {alpha.size} digits")
    return alpha


def load_alpha(source: str, family: GlsFamily) -> FrequencyVector:
    """source 為檔案路徑或行內字串；'uniform' 與 'lebesgue' 為內建向量"""
    if source == "uniform":
        return uniform(family)
    if source == "lebesgue":
        return lebesgue(family)

    try:
        is_file = Path(source).is_file()
    except OSError:
        is_file = False
    if is_file:
        with open(source, "r", encoding="utf-8") as f:
            return parse_alpha(f.read(), family)
    return parse_alpha(source, family)
