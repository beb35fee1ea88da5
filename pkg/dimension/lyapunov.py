"""
熵、Lyapunov 指數與封閉形式維度
- entropy：h = −Σ α_e log α_e（0·log 0 = 0）
- chi：χ1 = −Σ α_e log p_e，χ2 = −Σ α_e log l_e
- lyapunov_dim：min{h/χ1, 1 + (h − χ1)/χ2}
- dim_level_set：以 Σ α log α 等原始比值寫出的同一個 min
- dim_fibre：(h − h_J)/χ2，h_J = −Σ α_j log α_j

對數一律為自然對數。
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.special import entr, xlogy

from core.errors import HypothesisError
from core.system import GlsFamily, check_domination
from scheduler.frequency import FrequencyVector, from_values

logger = logging.getLogger(__name__)

BRANCH_ENTROPY = "entropy-ratio"  # h/χ1
BRANCH_FIBRE = "fibre-correction"  # 1 + (h − χ1)/χ2


@dataclass(frozen=True)
class DimensionReport:
    """各條路徑的維度結果"""

    entropy: float
    chi1: float
    chi2: float
    lyapunov_dim: float
    dim_level_set: float
    dim_fibre: Optional[float]
    dim_variational: Optional[float]
    branch: str

    def to_dict(self) -> dict:
        return asdict(self)


def aligned(alpha: FrequencyVector, family: GlsFamily) -> FrequencyVector:
    """將 α 依 family.digits 排列並綁定 family"""
    if alpha.family is family and alpha.digits == family.digits:
        return alpha
    mapping = dict(zip(alpha.digits, alpha.exact))
    for e in mapping:
        family.index_of(e)
    return from_values(family.digits, [mapping.get(e, 0) for e in family.digits], family)


def require_domination(family: GlsFamily) -> None:
    check = check_domination(family)
    if not check.holds:
        raise HypothesisError(
            f"domination p_e > l_e fails for digits {list(check.offenders)}", "weights"
        )


def entropy(alpha: FrequencyVector) -> float:
    """−Σ α_e log α_e"""
    return float(np.sum(entr(alpha.values)))


def marginal_entropy(alpha: FrequencyVector) -> float:
    """h_J = −Σ α_j log α_j"""
    return float(np.sum(entr(alpha.marginals)))


def _chi2(alpha: FrequencyVector, family: GlsFamily) -> float:
    alpha = aligned(alpha, family)
    return float(-np.sum(xlogy(alpha.values, family.digit_l)))


def chi(alpha: FrequencyVector, family: GlsFamily) -> tuple[float, float]:
    """(χ1, χ2)，需要支配條件"""
    require_domination(family)
    alpha = aligned(alpha, family)
    chi1 = float(-np.sum(xlogy(alpha.values, family.digit_p)))
    return chi1, _chi2(alpha, family)


def _lyapunov_arms(alpha: FrequencyVector, family: GlsFamily) -> tuple[float, float]:
    h = entropy(alpha)
    chi1, chi2 = chi(alpha, family)
    return h / chi1, 1.0 + (h - chi1) / chi2


def lyapunov_dim(alpha: FrequencyVector, family: GlsFamily) -> float:
    """μ_α 的 Lyapunov 維度，限制在 [0,2]"""
    first, second = _lyapunov_arms(alpha, family)
    return float(min(max(min(first, second), 0.0), 2.0))


def branch(alpha: FrequencyVector, family: GlsFamily) -> str:
    first, second = _lyapunov_arms(alpha, family)
    return BRANCH_ENTROPY if first <= second else BRANCH_FIBRE


def dim_level_set(alpha: FrequencyVector, family: GlsFamily) -> float:
    """
    位準集 F(α) 的 Hausdorff 維度

    min{ Σα log α / Σα log p, 1 + (Σα log α − Σα log p) / Σα log l }
    """
    require_domination(family)
    alpha = aligned(alpha, family)
    a_log_a = -entropy(alpha)
    a_log_p = float(np.sum(xlogy(alpha.values, family.digit_p)))
    a_log_l = float(np.sum(xlogy(alpha.values, family.digit_l)))
    value = min(a_log_a / a_log_p, 1.0 + (a_log_a - a_log_p) / a_log_l)
    return float(min(max(value, 0.0), 2.0))


def dim_fibre(alpha: FrequencyVector, family: GlsFamily) -> float:
    """典型纖維 F_w(α) 的維度 (h − h_J)/χ2，需要每個 α_j > 0"""
    alpha = aligned(alpha, family)
    alpha.require_positive_marginals()
    value = (entropy(alpha) - marginal_entropy(alpha)) / _chi2(alpha, family)
    return float(min(max(value, 0.0), 1.0))


def dimension_report(
    alpha: FrequencyVector,
    family: GlsFamily,
    tol: Optional[float] = None,
    variational: bool = True,
) -> DimensionReport:
    """計算所有維度；邊際為零時纖維維度為 None"""
    from dimension.pressure import dim_variational

    alpha = aligned(alpha, family)
    h = entropy(alpha)
    chi1, chi2 = chi(alpha, family)

    try:
        fibre = dim_fibre(alpha, family)
    except HypothesisError as e:
        logger.warning(f"Fibre dimension skipped: {e}")
        fibre = None

    report = DimensionReport(
        entropy=h,
        chi1=chi1,
        chi2=chi2,
        lyapunov_dim=lyapunov_dim(alpha, family),
        dim_level_set=dim_level_set(alpha, family),
        dim_fibre=fibre,
        dim_variational=dim_variational(alpha, family, tol) if variational else None,
        branch=branch(alpha, family),
    )
    logger.info(
        f"Dimension report: level set {report.dim_level_set:.6f}, branch {report.branch}"
    )
    return report
