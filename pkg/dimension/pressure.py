"""
奇異值函數、拓撲壓力與變分維度
"""

import itertools
import logging
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp, softmax

import config
from codec.expansion import Word
from core.errors import ConvergenceError, HypothesisError, ValidationError
from core.system import Digit, GlsFamily, new_family
from dimension.lyapunov import aligned, dim_level_set, entropy, require_domination
from scheduler.frequency import FrequencyVector, from_values

logger = logging.getLogger(__name__)


class PressureMinimum(NamedTuple):
    """inf_q 的數值結果，q 位於 Σq = 0 超平面上"""

    value: float
    q: np.ndarray
    iterations: int


def _check_s(s: float, upper_open: bool) -> float:
    s = float(s)
    if not np.isfinite(s) or s < 0 or s > 2 or (upper_open and s == 2):
        interval = "[0,2)" if upper_open else "[0,2]"
        raise ValidationError(f"s must lie in {interval}, got {s}", "s")
    return s


def log_psi(family: GlsFamily, s: float) -> np.ndarray:
    """log ψ_s(e)：s<1 為 s·log p_e，s≥1 為 log p_e + (s−1)·log l_e"""
    log_p = np.log(family.digit_p)
    if s < 1:
        return s * log_p
    return log_p + (s - 1) * np.log(family.digit_l)


def _phi_from_singular(sigma1: float, sigma2: float, s: float) -> float:
    if s < 1:
        return sigma1**s
    return sigma1 * sigma2 ** (s - 1)


def phi_s(family: GlsFamily, word: Union[Word, Sequence[Digit]], s: float) -> float:
    """對角乘積 A_u 的奇異值函數 φ^s"""
    s = _check_s(s, upper_open=True)
    require_domination(family)
    digits = word.digits if isinstance(word, Word) else tuple(tuple(e) for e in word)
    idx = np.array([family.index_of(e) for e in digits], dtype=int)
    a = float(np.prod(family.digit_p[idx]))
    b = float(np.prod(family.digit_l[idx]))
    return _phi_from_singular(max(a, b), min(a, b), s)


def _q_array(family: GlsFamily, q) -> np.ndarray:
    if q is None:
        return np.zeros(family.size)
    if isinstance(q, dict):
        arr = np.zeros(family.size)
        for e, value in q.items():
            arr[family.index_of(tuple(e))] = float(value)
        return arr
    arr = np.asarray(q, dtype=float)
    if arr.shape != (family.size,):
        raise ValidationError(f"q needs {family.size} components, got {arr.size}", "q")
    return arr


def pressure(family: GlsFamily, alpha: FrequencyVector, s: float, q=None) -> float:
    """P = log Σ_e ψ_s(e)·e^{q_e} − ⟨q, α⟩"""
    s = _check_s(s, upper_open=False)
    require_domination(family)
    alpha = aligned(alpha, family)
    q = _q_array(family, q)
    return float(logsumexp(log_psi(family, s) + q) - q @ alpha.values)


def pressure_bruteforce(
    family: GlsFamily, alpha: FrequencyVector, s: float, q=None, n: int = 1
) -> float:
    """(1/n)·log Σ_{u∈E^n} φ^s(A_u)·exp(S_n Φ)，逐一列舉 n-柱集"""
    s = _check_s(s, upper_open=True)
    if n < 1:
        raise ValidationError("n must be positive", "n")
    require_domination(family)
    alpha = aligned(alpha, family)
    q = _q_array(family, q)
    shift = n * float(q @ alpha.values)
    log_p = np.log(family.digit_p)
    log_l = np.log(family.digit_l)

    terms = []
    for u in itertools.product(range(family.size), repeat=n):
        u = list(u)
        log_a, log_b = log_p[u].sum(), log_l[u].sum()
        log_s1, log_s2 = max(log_a, log_b), min(log_a, log_b)
        log_phi = s * log_s1 if s < 1 else log_s1 + (s - 1) * log_s2
        terms.append(log_phi + q[u].sum() - shift)
    logger.debug(f"Brute-force pressure over {len(terms)} cylinders of depth {n}")
    return float(logsumexp(terms) / n)


def pressure_dual(family: GlsFamily, alpha: FrequencyVector, s: float) -> float:
    """Σ_{α_e>0} α_e log(ψ_s(e)/α_e)"""
    s = _check_s(s, upper_open=False)
    require_domination(family)
    alpha = aligned(alpha, family)
    support = alpha.values > 0
    a = alpha.values[support]
    return float(np.sum(a * (log_psi(family, s)[support] - np.log(a))))


def minimize_pressure(family: GlsFamily, alpha: FrequencyVector, s: float) -> PressureMinimum:
    """
    在 α 的支撐上對 q 最小化壓力

    α_e = 0 的數字會讓 q_e → −∞，等同於直接丟掉，所以只在支撐上最佳化。
    """
    s = _check_s(s, upper_open=False)
    require_domination(family)
    alpha = aligned(alpha, family)
    support = alpha.values > 0
    a = alpha.values[support]
    a = a / a.sum()
    lp = log_psi(family, s)[support]

    q_full = np.zeros(family.size)
    if a.size == 1:
        return PressureMinimum(value=float(lp[0]), q=q_full, iterations=0)

    def objective(y):
        z = lp + y
        return logsumexp(z) - y @ a, softmax(z) - a

    result = minimize(
        objective,
        np.zeros(a.size),
        jac=True,
        method="BFGS",
        options={"gtol": config.GRADIENT_TOL / 10, "maxiter": config.MAX_OPTIMIZER_ITER},
    )
    _, grad = objective(result.x)
    grad_norm = float(np.max(np.abs(grad)))
    if grad_norm > config.GRADIENT_TOL:
        raise ConvergenceError(
            f"inf_q pressure did not converge at s={s} (gradient {grad_norm:.2e}, {result.nit} iterations)",
            "q",
        )

    q_full[support] = result.x - result.x.mean()
    return PressureMinimum(value=float(result.fun), q=q_full, iterations=int(result.nit))


def inf_q_pressure(family: GlsFamily, alpha: FrequencyVector, s: float) -> float:
    return minimize_pressure(family, alpha, s).value


def dim_variational(
    alpha: FrequencyVector, family: GlsFamily, tol: Optional[float] = None
) -> float:
    """sup{s ∈ [0,2] : inf_q P(s, q) ≥ 0}，二分法"""
    tol = config.DEFAULT_TOL if tol is None else float(tol)
    if not tol > 0:
        raise ValidationError("tolerance must be positive", "tol")
    require_domination(family)
    alpha = aligned(alpha, family)

    if inf_q_pressure(family, alpha, 2.0) >= 0:
        return 2.0

    # g(0) = h ≥ 0
    lo, hi = 0.0, 2.0
    logger.debug(f"Bisection start: h = {entropy(alpha):.6f}")
    for _ in range(config.MAX_BISECTION_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if inf_q_pressure(family, alpha, mid) >= 0:
            lo = mid
        else:
            hi = mid
    else:
        if hi - lo > tol:
            raise ConvergenceError(
                f"bisection stopped after {config.MAX_BISECTION_ITER} iterations at width {hi - lo:.2e}",
                "tol",
            )
    return 0.5 * (lo + hi)


def weight_sweep(
    family: GlsFamily, alpha: FrequencyVector, weights_list: Sequence[Sequence]
) -> list[tuple[tuple[float, ...], Optional[float]]]:
    """對每組權重重算 dim_level_set；支配條件不成立時記為 None"""
    alpha = aligned(alpha, family)
    results = []
    for i, weights in enumerate(weights_list):
        swept = new_family(family.systems, weights, field=f"weights[{i}]")
        swept_alpha = from_values(family.digits, alpha.exact, swept)
        try:
            value = dim_level_set(swept_alpha, swept)
        except HypothesisError as e:
            logger.warning(f"Sweep point {i} skipped: {e}")
            value = None
        results.append((tuple(float(w) for w in swept.weights), value))
    return results
