"""
纖維維度的經驗估計
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

import config
from codec.expansion import Word
from core.errors import HypothesisError, ValidationError
from core.system import Digit, GlsFamily
from dimension.lyapunov import aligned
from estimator.sampling import sample_fibre_points
from estimator.scaling import ScalingFit, default_scales, grid_entropy_dim
from scheduler.frequency import FrequencyVector

logger = logging.getLogger(__name__)


def estimate_dim_fibre(
    family: GlsFamily,
    alpha: FrequencyVector,
    n: int = config.DEFAULT_DEPTH,
    M: int = config.DEFAULT_SAMPLES,
    seed: int = config.DEFAULT_SEED,
    scales: Optional[Sequence[float]] = None,
    workers: Optional[int] = None,
) -> ScalingFit:
    """一條抽樣纖維上 x 座標的一維 grid entropy 斜率"""
    cloud = sample_fibre_points(family, alpha, n, M, seed, workers=workers)
    if scales is None:
        scales = default_scales(family, M, dim=1)
    return grid_entropy_dim(cloud, scales)


def local_dim_fibre(
    family: GlsFamily, alpha: FrequencyVector, word: Union[Word, Sequence[Digit]]
) -> list[float]:
    """
    各深度 m 的 log m_{w,α}(Δ_m) / log|Δ_m|

    條件機率 α_e/α_j 以分數計算後才取對數，
    當它等於 l_e 時比值恰為 1。
    """
    alpha = aligned(alpha, family)
    digits = word.digits if isinstance(word, Word) else tuple(tuple(e) for e in word)
    if not digits:
        raise ValidationError("local dimension needs a nonempty word", "word")

    marginals = alpha.exact_marginals
    log_mass = np.empty(family.size)
    for i, e in enumerate(family.digits):
        alpha_j = marginals.get(e[0], Fraction(0))
        a = alpha.exact[i]
        log_mass[i] = np.log(float(a / alpha_j)) if alpha_j > 0 and a > 0 else -np.inf

    idx = np.array([family.index_of(e) for e in digits], dtype=np.int64)
    used = np.unique(family.digit_j[idx])
    zero = [int(j) for j in used if marginals.get(int(j), 0) == 0]
    if zero:
        raise HypothesisError(f"fibre measure undefined: marginal of systems {zero} is zero", "alpha")

    with np.errstate(divide="ignore", invalid="ignore"):
        num = np.cumsum(log_mass[idx])
        den = np.cumsum(np.log(family.digit_l[idx]))
        ratios = num / den
    logger.debug(f"Local fibre dimension at depth {len(digits)}: {ratios[-1]:.6f}")
    return [float(r) for r in ratios]
