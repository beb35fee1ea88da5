"""
GLS 數系與冗餘族
- GlsSystem：一組分割點 r_0..r_B 與翻轉 ε_k
- GlsFamily：J 個 GlsSystem 加上驅動權重 p
- 仿射資料、GLS 數字集合、支配條件檢查

分支公式採 h_k(x) = r_k + ε_k·l_k + (−1)^{ε_k}·x·l_k，
使 h_k([0,1]) = [r_k, r_{k+1}] 且與數字集合 D 的 t = r_k + ε_k·l_k 一致。
"""

import logging
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

import config
from core.errors import ValidationError

logger = logging.getLogger(__name__)

Digit = tuple[int, int]


def to_fraction(value, field: str, max_denominator: Optional[int] = None) -> Fraction:
    """
    將使用者輸入轉為精確分數（只轉換一次）

    接受整數、浮點數、分數，以及 "1/3"、"0.25" 形式的字串。
    浮點數以其最短十進位表示轉換，因此 0.4 會變成 2/5。
    """
    if isinstance(value, bool):
        raise ValidationError(f"expected a number, got {value!r}", field)
    if isinstance(value, Fraction):
        result = value
    elif isinstance(value, numbers.Integral):
        result = Fraction(int(value))
    elif isinstance(value, numbers.Real):
        number = float(value)
        if not np.isfinite(number):
            raise ValidationError(f"expected a finite number, got {value!r}", field)
        result = Fraction(repr(number))
    elif isinstance(value, str):
        try:
            result = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse number {value!r}", field) from None
    else:
        raise ValidationError(f"expected a number, got {type(value).__name__}", field)

    if max_denominator is not None:
        result = result.limit_denominator(max_denominator)
    return result


def _check_unit(x: float, field: str = "x") -> float:
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"must lie in [0,1], got {x}", field)
    return x


@dataclass(frozen=True)
class GlsSystem:
    """單一有限 GLS 系統 H_j"""

    partition: tuple[Fraction, ...]
    flips: tuple[int, ...]

    @property
    def size(self) -> int:
        """數字個數 B"""
        return len(self.flips)

    @cached_property
    def points(self) -> np.ndarray:
        return np.array([float(r) for r in self.partition])

    @cached_property
    def lengths(self) -> np.ndarray:
        # 以精確差值計算 l_k 再轉浮點
        return np.array(
            [float(b - a) for a, b in zip(self.partition[:-1], self.partition[1:])]
        )

    def length(self, k: int) -> float:
        return float(self.lengths[k])

    def start(self, k: int) -> float:
        """h_k(0)：ε=0 時為 r_k，ε=1 時為 r_{k+1}"""
        return float(self.partition[k] + self.flips[k] * (self.partition[k + 1] - self.partition[k]))

    def slope(self, k: int) -> float:
        return -self.length(k) if self.flips[k] else self.length(k)

    def _check_digit(self, k: int) -> None:
        if not 0 <= k < self.size:
            raise ValidationError(f"digit {k} out of range 0..{self.size - 1}", "k")

    def h(self, k: int, x: float) -> float:
        self._check_digit(k)
        return self.start(k) + self.slope(k) * x

    def cell_of(self, x: float) -> int:
        """x 所在的分割區間 [r_k, r_{k+1})，最後一格為閉區間"""
        k = int(np.searchsorted(self.points, x, side="right")) - 1
        return min(max(k, 0), self.size - 1)

    def inverse_h(self, k: int, x: float) -> float:
        """h_k 的反函數，結果夾在 [0,1]"""
        self._check_digit(k)
        y = (x - self.start(k)) / self.slope(k)
        return min(max(y, 0.0), 1.0)


def new_gls_system(partition: Sequence, flips: Sequence, field: str = "system") -> GlsSystem:
    """驗證並建立 GlsSystem"""
    tol = Fraction(config.VALIDATION_TOL)
    points = [to_fraction(r, f"{field}.partition[{i}]") for i, r in enumerate(partition)]

    if len(points) < 3:
        raise ValidationError("needs at least 3 partition points (B >= 2)", f"{field}.partition")
    if len(flips) != len(points) - 1:
        raise ValidationError(
            f"has {len(flips)} flips for {len(points) - 1} intervals", f"{field}.flips"
        )

    if abs(points[0]) > tol:
        raise ValidationError(f"first point must be 0, got {points[0]}", f"{field}.partition[0]")
    if abs(points[-1] - 1) > tol:
        raise ValidationError(
            f"last point must be 1, got {points[-1]}", f"{field}.partition[{len(points) - 1}]"
        )
    points[0], points[-1] = Fraction(0), Fraction(1)

    for i in range(1, len(points)):
        if points[i] <= points[i - 1]:
            raise ValidationError(
                f"partition is not strictly increasing at index {i}", f"{field}.partition[{i}]"
            )

    checked_flips = []
    for i, eps in enumerate(flips):
        if isinstance(eps, bool) or eps not in (0, 1):
            raise ValidationError(f"flip must be 0 or 1, got {eps!r}", f"{field}.flips[{i}]")
        checked_flips.append(int(eps))

    return GlsSystem(partition=tuple(points), flips=tuple(checked_flips))


class AffineDigitData(NamedTuple):
    """A_e = diag(p_e, ±l_e)，v_e = (Σ_{i<j} p_i, r_{j,k} + ε·l_e)"""

    diagonal: tuple[float, float]
    translation: tuple[float, float]

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)

    def apply(self, point: Sequence[float]) -> np.ndarray:
        return self.matrix @ np.asarray(point, dtype=float) + np.asarray(self.translation)

    def image_of_unit_square(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """單位正方形的像（w 區間, x 區間）"""
        corners = [self.apply(c) for c in ((0.0, 0.0), (1.0, 1.0))]
        w = sorted(c[0] for c in corners)
        x = sorted(c[1] for c in corners)
        return (w[0], w[1]), (x[0], x[1])


class DigitTriple(NamedTuple):
    """GLS 數字 (s, K, t)"""

    s: int
    K: float
    t: float


class DominationCheck(NamedTuple):
    holds: bool
    offenders: tuple[Digit, ...]


@dataclass(frozen=True)
class GlsFamily:
    """有冗餘的有限 GLS 數系"""

    systems: tuple[GlsSystem, ...]
    weights: tuple[Fraction, ...]

    @property
    def J(self) -> int:
        return len(self.systems)

    @cached_property
    def digits(self) -> tuple[Digit, ...]:
        """E，依 (j,k) 字典序"""
        return tuple((j, k) for j, system in enumerate(self.systems) for k in range(system.size))

    @property
    def size(self) -> int:
        """𝔪 = #E"""
        return len(self.digits)

    @cached_property
    def _index(self) -> dict[Digit, int]:
        return {e: i for i, e in enumerate(self.digits)}

    def index_of(self, e: Digit) -> int:
        try:
            return self._index[tuple(e)]
        except (KeyError, TypeError):
            raise ValidationError(f"unknown digit {e!r}", "digit") from None

    @cached_property
    def p(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    @cached_property
    def offsets(self) -> np.ndarray:
        """Σ_{i<j} p_i，以精確分數累加"""
        total, result = Fraction(0), []
        for w in self.weights:
            result.append(float(total))
            total += w
        return np.array(result)

    # === 每個數字的向量化資料（依 digits 順序）===

    @cached_property
    def digit_j(self) -> np.ndarray:
        return np.array([j for j, _ in self.digits], dtype=np.int64)

    @cached_property
    def digit_p(self) -> np.ndarray:
        return self.p[self.digit_j]

    @cached_property
    def digit_l(self) -> np.ndarray:
        return np.array([self.systems[j].length(k) for j, k in self.digits])

    @cached_property
    def digit_start(self) -> np.ndarray:
        return np.array([self.systems[j].start(k) for j, k in self.digits])

    @cached_property
    def digit_slope(self) -> np.ndarray:
        return np.array([self.systems[j].slope(k) for j, k in self.digits])

    @cached_property
    def digit_offset(self) -> np.ndarray:
        return self.offsets[self.digit_j]

    def digits_of(self, j: int) -> tuple[Digit, ...]:
        return tuple(e for e in self.digits if e[0] == j)


def new_family(systems: Sequence[GlsSystem], weights: Sequence, field: str = "family") -> GlsFamily:
    """驗證並建立 GlsFamily"""
    if len(systems) < 2:
        raise ValidationError(f"needs at least 2 systems, got {len(systems)}", f"{field}.systems")
    if len(weights) != len(systems):
        raise ValidationError(
            f"has {len(weights)} weights for {len(systems)} systems", f"{field}.weights"
        )

    exact = [to_fraction(w, f"{field}.weights[{i}]") for i, w in enumerate(weights)]
    for i, w in enumerate(exact):
        if w <= 0:
            raise ValidationError(f"weight must be positive, got {w}", f"{field}.weights[{i}]")
    total = sum(exact)
    if abs(total - 1) > Fraction(config.VALIDATION_TOL):
        raise ValidationError(f"weights sum to {float(total)!r}, not 1", f"{field}.weights")

    family = GlsFamily(systems=tuple(systems), weights=tuple(exact))
    logger.debug(f"Family built: J={family.J}, digits={family.size}")
    return family


def apply_h(system: GlsSystem, k: int, x: float) -> float:
    """h_k(x)"""
    return system.h(k, _check_unit(x))


def apply_f(family: GlsFamily, j: int, w: float) -> float:
    """驅動系統 f_j(w) = p_j·w + Σ_{i<j} p_i"""
    _check_unit(w, "w")
    if not 0 <= j < family.J:
        raise ValidationError(f"system {j} out of range 0..{family.J - 1}", "j")
    return float(family.p[j] * w + family.offsets[j])


def affine_data(family: GlsFamily, e: Digit) -> AffineDigitData:
    """數字 e 的仿射資料 (A_e, v_e)"""
    i = family.index_of(e)
    return AffineDigitData(
        diagonal=(float(family.digit_p[i]), float(family.digit_slope[i])),
        translation=(float(family.digit_offset[i]), float(family.digit_start[i])),
    )


def digit_set(family: GlsFamily) -> list[DigitTriple]:
    """GLS 數字集合 D，每個 e 一個 (s, K, t)"""
    triples = []
    for j, k in family.digits:
        system = family.systems[j]
        l_exact = system.partition[k + 1] - system.partition[k]
        triples.append(
            DigitTriple(
                s=system.flips[k],
                K=float(1 / l_exact),
                t=float(system.partition[k] + system.flips[k] * l_exact),
            )
        )
    return triples


def check_domination(family: GlsFamily) -> DominationCheck:
    """檢查 p_j > l_{(j,k)} 對所有 (j,k) 成立"""
    offenders = tuple(
        (j, k)
        for j, system in enumerate(family.systems)
        for k in range(system.size)
        if not family.weights[j] > system.partition[k + 1] - system.partition[k]
    )
    return DominationCheck(holds=not offenders, offenders=offenders)


def has_distinct_maps(family: GlsFamily) -> bool:
    """所有 h_e 互不相同時 E 與 D 才一一對應"""
    seen = set()
    for j, k in family.digits:
        system = family.systems[j]
        key = (system.partition[k], system.partition[k + 1], system.flips[k])
        if key in seen:
            return False
        seen.add(key)
    return True


def compose_x_interval(family: GlsFamily, word: Iterable[Digit]) -> tuple[float, float]:
    """h_{e_1}∘…∘h_{e_n}([0,1])，由內而外"""
    a, b = 0.0, 1.0
    for e in reversed(list(word)):
        i = family.index_of(e)
        start, slope = family.digit_start[i], family.digit_slope[i]
        a, b = sorted((start + slope * a, start + slope * b))
    return float(a), float(b)


def compose_w_interval(family: GlsFamily, jseq: Iterable[int]) -> tuple[float, float]:
    """f_{j_1}∘…∘f_{j_n}([0,1])"""
    a, b = 0.0, 1.0
    for j in reversed(list(jseq)):
        if not 0 <= j < family.J:
            raise ValidationError(f"system {j} out of range 0..{family.J - 1}", "j")
        a, b = family.p[j] * a + family.offsets[j], family.p[j] * b + family.offsets[j]
    return float(a), float(b)
