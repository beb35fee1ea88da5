"""
μ_α 抽樣與點雲
- sample_word：i.i.d. 數字，分佈為 α
- sample_points：解碼 M 個隨機字的中點，得到 F(α) 的典型點
- sample_fibre_points：固定一條抽樣的纖維 w，只解碼 x 座標

每個 chunk 的 seed 由主 seed 以 SeedSequence.spawn 衍生，
所以輸出只取決於 (輸入, seed)，與 worker 數無關。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

import config
from codec.expansion import Word
from core.errors import ValidationError
from core.system import GlsFamily, compose_w_interval
from dimension.lyapunov import aligned
from measures.bernoulli import sample_w
from scheduler.frequency import FrequencyVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PointCloud:
    """M 個點，2D 為 (w, x)，纖維點雲為 1D 的 x，fibre_w 記錄所在纖維"""

    points: np.ndarray
    depth: int
    samples: int
    seed: int
    fibre_w: Optional[float] = None

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def rows(self) -> np.ndarray:
        """CSV 用的 (w, x) 列"""
        if self.dim == 2:
            return self.points
        return np.column_stack([np.full(len(self), self.fibre_w), self.points[:, 0]])

    def to_csv(self, stream) -> None:
        np.savetxt(stream, self.rows(), delimiter=",", header="w,x", comments="", fmt="%.17g")


def _check_counts(n: int, M: int) -> None:
    if n < 1:
        raise ValidationError("depth must be positive", "depth")
    if M < 1:
        raise ValidationError("sample count must be positive", "samples")


def _chunk_sizes(M: int) -> list[int]:
    full, rest = divmod(M, config.SAMPLE_CHUNK)
    return [config.SAMPLE_CHUNK] * full + ([rest] if rest else [])


def _run_chunks(task, M: int, seed: int, workers: Optional[int]) -> list:
    sizes = _chunk_sizes(M)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    workers = config.WORKERS if workers is None else workers
    if workers <= 1 or len(sizes) == 1:
        return [task(size, s) for size, s in zip(sizes, seeds)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, sizes, seeds))


def _decode_x(family: GlsFamily, idx: np.ndarray) -> np.ndarray:
    """由最內層往外套用 h_e，起點為 [0,1] 的中點"""
    x = np.full(idx.shape[0], 0.5)
    for m in range(idx.shape[1] - 1, -1, -1):
        e = idx[:, m]
        x = family.digit_start[e] + family.digit_slope[e] * x
    return x


def _decode_w(family: GlsFamily, idx: np.ndarray) -> np.ndarray:
    w = np.full(idx.shape[0], 0.5)
    for m in range(idx.shape[1] - 1, -1, -1):
        e = idx[:, m]
        w = family.digit_offset[e] + family.digit_p[e] * w
    return w


def sample_word(alpha: FrequencyVector, n: int, seed: int) -> Word:
    """長度 n 的 μ_α 隨機字"""
    if n < 1:
        raise ValidationError("depth must be positive", "depth")
    rng = np.random.default_rng(seed)
    idx = rng.choice(alpha.size, size=n, p=alpha.values / alpha.values.sum())
    return Word(digits=tuple(alpha.digits[i] for i in idx), family=alpha.family)


def sample_points(
    family: GlsFamily,
    alpha: FrequencyVector,
    n: int,
    M: int,
    seed: int,
    workers: Optional[int] = None,
) -> PointCloud:
    """M 個深度 n 的隨機字解碼後的中點"""
    _check_counts(n, M)
    alpha = aligned(alpha, family)
    probs = alpha.values / alpha.values.sum()

    def task(size, chunk_seed):
        rng = np.random.default_rng(chunk_seed)
        idx = rng.choice(family.size, size=(size, n), p=probs)
        return np.column_stack([_decode_w(family, idx), _decode_x(family, idx)])

    points = np.clip(np.concatenate(_run_chunks(task, M, seed, workers)), 0.0, 1.0)
    logger.info(f"Sampled {M} points at depth {n} (seed={seed})")
    return PointCloud(points=points, depth=n, samples=M, seed=seed)


def sample_fibre_points(
    family: GlsFamily,
    alpha: FrequencyVector,
    n: int,
    M: int,
    seed: int,
    workers: Optional[int] = None,
) -> PointCloud:
    """
    單一纖維上的點雲

    先以邊際 (α_j) 抽出 w 的編碼，再依條件機率 α_{(j,k)}/α_j
    在每個位置獨立抽 k，只解碼 x。
    """
    _check_counts(n, M)
    alpha = aligned(alpha, family)
    alpha.require_positive_marginals()

    w_seed, x_seed = np.random.SeedSequence(seed).spawn(2)
    coding = sample_w(alpha, n, w_seed).jseq
    jseq = np.array(coding)
    w_interval = compose_w_interval(family, coding)

    strands = []
    for j in range(family.J):
        positions = np.flatnonzero(jseq == j)
        if positions.size == 0:
            continue
        digit_idx = np.flatnonzero(family.digit_j == j)
        cond = alpha.values[digit_idx]
        strands.append((positions, digit_idx, cond / cond.sum()))

    def task(size, chunk_seed):
        rng = np.random.default_rng(chunk_seed)
        idx = np.empty((size, n), dtype=np.int64)
        for positions, digit_idx, cond in strands:
            idx[:, positions] = rng.choice(digit_idx, size=(size, positions.size), p=cond)
        return _decode_x(family, idx)

    chunk_seed = int(x_seed.generate_state(1)[0])
    x = np.clip(np.concatenate(_run_chunks(task, M, chunk_seed, workers)), 0.0, 1.0)
    logger.info(f"Sampled {M} fibre points at depth {n} (seed={seed})")
    return PointCloud(
        points=x.reshape(-1, 1),
        depth=n,
        samples=M,
        seed=seed,
        fibre_w=0.5 * (w_interval[0] + w_interval[1]),
    )
