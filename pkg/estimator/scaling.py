"""
點雲的尺度擬合
- grid_entropy_dim：資訊維度，Σ (n_i/M) log(n_i/M) 對 log δ 的斜率
- box_count_dim：log N(δ) 對 −log δ 的斜率（診斷用）
- default_scales：以主導收縮率的次方為尺度，最細尺度的格子數不超過 M/8
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import linregress

from core.errors import ValidationError
from core.system import GlsFamily
from estimator.sampling import PointCloud

logger = logging.getLogger(__name__)

MIN_SCALES = 3
BOXES_PER_SAMPLE = 8  # 最細尺度：格子數 ≤ M / BOXES_PER_SAMPLE


@dataclass(frozen=True)
class ScalingFit:
    """尺度 δ_1 > … > δ_K、各尺度統計量、斜率與殘差"""

    scales: tuple[float, ...]
    statistics: tuple[float, ...]
    slope: float
    intercept: float
    residual: float
    kind: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "scales": list(self.scales),
            "statistics": list(self.statistics),
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
        }


def _check_inputs(cloud: PointCloud, scales: Sequence[float]) -> np.ndarray:
    if len(cloud) == 0:
        raise ValidationError("point cloud is empty", "cloud")
    scales = np.asarray(sorted((float(d) for d in scales), reverse=True))
    if scales.size < MIN_SCALES:
        raise ValidationError(f"need at least {MIN_SCALES} scales, got {scales.size}", "scales")
    if np.any(scales <= 0) or np.any(scales > 1):
        raise ValidationError("scales must lie in (0,1]", "scales")
    if np.unique(scales).size != scales.size:
        raise ValidationError("scales must be distinct", "scales")
    return scales


def box_occupancy(points: np.ndarray, delta: float) -> np.ndarray:
    """各個被佔據格子的點數"""
    boxes = max(1, math.ceil(1.0 / delta))
    labels = np.clip(np.floor(points / delta).astype(np.int64), 0, boxes - 1)
    _, counts = np.unique(labels, axis=0, return_counts=True)
    return counts


def _fit(x: np.ndarray, y: np.ndarray, scales: np.ndarray, kind: str) -> ScalingFit:
    if np.ptp(y) == 0:
        # 每個尺度都落在同一格：點雲退化為單點
        logger.warning(f"Degenerate {kind} fit: statistic constant across scales, slope 0")
    result = linregress(x, y)
    residual = float(np.sqrt(np.mean((y - (result.intercept + result.slope * x)) ** 2)))
    fit = ScalingFit(
        scales=tuple(float(d) for d in scales),
        statistics=tuple(float(v) for v in y),
        slope=float(result.slope),
        intercept=float(result.intercept),
        residual=residual,
        kind=kind,
    )
    logger.info(f"Fitted {kind} slope {fit.slope:.4f} over {scales.size} scales")
    return fit


def grid_entropy_dim(cloud: PointCloud, scales: Sequence[float]) -> ScalingFit:
    scales = _check_inputs(cloud, scales)
    M = len(cloud)
    stats = []
    for delta in scales:
        freq = box_occupancy(cloud.points, delta) / M
        stats.append(float(np.sum(freq * np.log(freq))))
    return _fit(np.log(scales), np.array(stats), scales, "grid-entropy")


def box_count_dim(cloud: PointCloud, scales: Sequence[float]) -> ScalingFit:
    scales = _check_inputs(cloud, scales)
    counts = [box_occupancy(cloud.points, delta).size for delta in scales]
    return _fit(-np.log(scales), np.log(np.array(counts, dtype=float)), scales, "box-count")


def dominant_ratio(family: GlsFamily, fibre: bool = False) -> float:
    """max_e max(p_e, l_e)；纖維上只看 l_e"""
    if fibre:
        return float(np.max(family.digit_l))
    return float(np.max(np.maximum(family.digit_p, family.digit_l)))


def default_scales(
    family: GlsFamily, M: int, dim: int = 2, count: int = 5, ratio: Optional[float] = None
) -> list[float]:
    """ratio^k，k 取到最細尺度的格子數不超過 M/8 為止"""
    ratio = dominant_ratio(family, fibre=dim == 1) if ratio is None else ratio
    finest = math.floor(math.log(M / BOXES_PER_SAMPLE) / (dim * -math.log(ratio)))
    coarsest = max(1, finest - count + 1)
    if finest - coarsest + 1 < MIN_SCALES:
        raise ValidationError(
            f"{M} samples are too few for {MIN_SCALES} scales of ratio {ratio:.4g}", "samples"
        )
    return [ratio**k for k in range(coarsest, finest + 1)]
