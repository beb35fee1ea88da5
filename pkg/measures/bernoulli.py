"""
Bernoulli 測度的柱集質量
- mu_cylinder：μ_α([ω]) = Π α_{ω_m}
- nu_interval：ν_α(f-柱集區間) = Π α_{j_m}
- m_fibre_mass：m_{w,α}(Δ_w(k_1..k_m)) = Π α_{(j_i,k_i)} / α_{j_i}
- fundamental_interval：Δ_w(k_1..k_m)
- sample_w：依邊際 (α_j) 抽樣 w 的編碼
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from codec.expansion import Word
from core.errors import HypothesisError, ValidationError
from core.system import Digit, GlsFamily, compose_x_interval
from scheduler.frequency import FrequencyVector

logger = logging.getLogger(__name__)

Mass = Union[float, Fraction]


@dataclass(frozen=True)
class FibreCoding:
    """固定 w 的 j 序列前綴"""

    jseq: tuple[int, ...]
    family: Optional[GlsFamily] = None

    def __post_init__(self):
        J = self.family.J if self.family is not None else None
        for i, j in enumerate(self.jseq):
            if j < 0 or (J is not None and j >= J):
                raise ValidationError(f"system {j} out of range", f"jseq[{i}]")

    def __len__(self) -> int:
        return len(self.jseq)


class FundamentalInterval(NamedTuple):
    a: float
    b: float
    depth: int

    @property
    def width(self) -> float:
        return self.b - self.a


def _digits(word: Union[Word, Sequence[Digit]]) -> tuple[Digit, ...]:
    return word.digits if isinstance(word, Word) else tuple(tuple(e) for e in word)


def mu_cylinder(alpha: FrequencyVector, word: Union[Word, Sequence[Digit]], exact: bool = False) -> Mass:
    """Π_m α_{ω_m}"""
    mass = Fraction(1)
    for e in _digits(word):
        mass *= alpha.exact_of(e)
        if mass == 0:
            break
    return mass if exact else float(mass)


def nu_interval(alpha: FrequencyVector, jword: Sequence[int], exact: bool = False) -> Mass:
    """Π_m α_{j_m}"""
    marginals = alpha.exact_marginals
    mass = Fraction(1)
    for j in jword:
        mass *= marginals.get(int(j), Fraction(0))
    return mass if exact else float(mass)


def m_fibre_mass(alpha: FrequencyVector, word: Union[Word, Sequence[Digit]], exact: bool = False) -> Mass:
    """Π_i α_{(j_i,k_i)} / α_{j_i}"""
    marginals = alpha.exact_marginals
    mass = Fraction(1)
    for j, k in _digits(word):
        alpha_j = marginals.get(j, Fraction(0))
        if alpha_j == 0:
            raise HypothesisError(f"fibre measure undefined: marginal of system {j} is zero", "alpha")
        mass *= alpha.exact_of((j, k)) / alpha_j
    return mass if exact else float(mass)


def fundamental_interval(family: GlsFamily, word: Union[Word, Sequence[Digit]]) -> FundamentalInterval:
    """h_{(j_1,k_1)}∘…∘h_{(j_m,k_m)}([0,1])"""
    digits = _digits(word)
    if not digits:
        raise ValidationError("fundamental interval needs a nonempty word", "word")
    a, b = compose_x_interval(family, digits)
    return FundamentalInterval(a=a, b=b, depth=len(digits))


def sample_w(alpha: FrequencyVector, n: int, seed: int) -> FibreCoding:
    """以 (α_j) 為機率的 i.i.d. j 序列；相同 seed 得到相同結果"""
    marginals = alpha.marginals
    rng = np.random.default_rng(seed)
    jseq = rng.choice(len(marginals), size=n, p=marginals / marginals.sum())
    logger.debug(f"Sampled fibre coding of length {n} (seed={seed})")
    return FibreCoding(jseq=tuple(int(j) for j in jseq), family=alpha.family)


def fibre_consistency(alpha: FrequencyVector) -> dict[Digit, Fraction]:
    """Σ_j ν(f_j 區間)·m(深度 1 區間)，對每個 e 應等於 α_e"""
    result = {}
    for j, k in alpha.digits:
        if alpha.exact_marginals[j] == 0:
            result[(j, k)] = Fraction(0)
            continue
        result[(j, k)] = nu_interval(alpha, (j,), exact=True) * m_fibre_mass(
            alpha, ((j, k),), exact=True
        )
    return result
