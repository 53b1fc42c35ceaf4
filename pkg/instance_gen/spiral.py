"""
黄金比例螺旋实例（让 Greedy 的 1-Borda 分数逼近 2·Rand 的构造）

选民按角度位置 x ∈ [0, 1) 排布，螺旋参数 θ = (t − 1) + x 落在第 t 层。第 t 层上覆盖 x 的
关键候选人给该选民的名次约为 m·a·φ^θ；第 0 层是一个覆盖全部选民的特殊候选人。
关键候选人沿螺旋依次占据 θ 轴上的一段窗口 [Θ, Θ + L(Θ))，窗口长度取使
“选它” 恰好比 “选一个可交换候选人” 多出安全余量的最小值，再统一拉伸使窗口正好铺满 [0, ℓ)。
"""

import bisect
import math
from fractions import Fraction
from typing import Any

import numpy as np
from pydantic import BaseModel, Field, model_validator

from election_core import DummyBlock, InvalidArgumentError, SymmetricProfile
from election_core.constant import (
    DEFAULT_DUMMY_BLOCK,
    PHI,
    SPIRAL_DEFAULT_A,
    SPIRAL_DEFAULT_DUMMY_MARGIN,
    SPIRAL_DEFAULT_LAYER_DECAY,
    SPIRAL_DEFAULT_LAYERS,
    SPIRAL_DEFAULT_M,
    SPIRAL_DEFAULT_RESOLUTION,
    SPIRAL_GRID,
)
from utils.logger import setup_logger

logger = setup_logger(__name__)

LAMBDA = -math.log(PHI)


class SpiralParams(BaseModel):
    layers: int = Field(SPIRAL_DEFAULT_LAYERS, ge=2, description="螺旋层数 ℓ")
    a: float = Field(SPIRAL_DEFAULT_A, gt=0, lt=PHI, description="名次尺度：θ 处的名次为 m·a·φ^θ")
    resolution: int = Field(SPIRAL_DEFAULT_RESOLUTION, ge=100, description="每层的均匀网格步数")
    m: int = Field(SPIRAL_DEFAULT_M, ge=1000, description="候选人数")
    dummy_margin: float = Field(SPIRAL_DEFAULT_DUMMY_MARGIN, ge=0, lt=1, description="相对可交换候选人的余量 ν")
    layer_decay: float = Field(SPIRAL_DEFAULT_LAYER_DECAY, ge=0, lt=1, description="跨层余量 μ")

    @model_validator(mode="after")
    def check_ranks(self) -> "SpiralParams":
        if SPIRAL_GRID % self.resolution != 0:
            raise ValueError(f"resolution 必须整除 {SPIRAL_GRID}")
        if math.floor(self.m * self.a * PHI**self.layers) < 1:
            raise ValueError("最深一层的名次小于 1，请增大 m 或 a")
        return self


def _window_length(theta: float, params: SpiralParams) -> float:
    z = (
        (1 + params.dummy_margin)
        * (1 - params.layer_decay) ** (theta - params.layers)
        * params.a
        * PHI ** (theta - 2)
        / 4
    )
    if z >= 1:
        raise InvalidArgumentError(f"θ={theta:.4f} 处窗口不存在（z={z:.4f} ≥ 1），请减小 a 或余量")
    return math.log(1 / (1 - z)) / LAMBDA


def _window_count(params: SpiralParams) -> int:
    theta, count = 0.0, 0
    while True:
        nxt = theta + _window_length(theta, params)
        if nxt > params.layers:
            return count
        theta, count = nxt, count + 1


def _walk_end(params: SpiralParams, count: int, stretch: float) -> float:
    theta = 0.0
    for _ in range(count):
        theta += stretch * _window_length(theta, params)
    return theta


def window_boundaries(params: SpiralParams) -> tuple[list[int], float]:
    """
    窗口边界（以 1/SPIRAL_GRID 为单位的整数，含 0 与 ℓ·GRID）及拉伸系数

    Returns:
        (边界列表, 拉伸系数 ≥ 1)
    """
    count = _window_count(params)
    if count == 0:
        raise InvalidArgumentError("一个窗口都放不下，请检查螺旋参数")
    lo, hi = 1.0, 2.0
    while _walk_end(params, count, hi) < params.layers:
        hi *= 2
    for _ in range(100):
        mid = (lo + hi) / 2
        if _walk_end(params, count, mid) < params.layers:
            lo = mid
        else:
            hi = mid
    stretch = lo

    bounds = [0]
    theta = 0.0
    for _ in range(count - 1):
        theta += stretch * _window_length(theta, params)
        bounds.append(round(theta * SPIRAL_GRID))
    bounds.append(params.layers * SPIRAL_GRID)
    if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:], strict=False)):
        raise InvalidArgumentError("窗口边界吸附到网格后不再严格递增")
    return bounds, stretch


def continuum_ratio(params: SpiralParams, k: int) -> float:
    """连续极限下 (k+1)·score/(m+1) 的估计：Greedy 最终分数 ≈ m·a·φ^{ℓ−1}(1−φ)/λ"""
    return (k + 1) * params.a * PHI ** (params.layers - 1) * (1 - PHI) / LAMBDA


def spiral_summary(params: SpiralParams) -> dict[str, Any]:
    """不构造画像，只返回窗口数、k 与连续极限比值估计"""
    bounds, stretch = window_boundaries(params)
    windows = len(bounds) - 1
    k = windows + 1
    return {
        "windows": windows,
        "k": k,
        "stretch": stretch,
        "continuum_ratio": continuum_ratio(params, k),
    }


def _group_cuts(bounds: list[int], resolution: int) -> list[int]:
    step = SPIRAL_GRID // resolution
    cuts = {b % SPIRAL_GRID for b in bounds} | {i * step for i in range(resolution)}
    return sorted(cuts) + [SPIRAL_GRID]


def _layer_rank(params: SpiralParams, t: int, q: int) -> int:
    return math.floor(params.m * params.a * PHI ** (t - 1 + q / SPIRAL_GRID))


def gen_spiral(params: SpiralParams | None = None) -> SymmetricProfile:
    """
    生成离散化的螺旋实例

    关键候选人 id 按螺旋顺序递增（特殊候选人为 0），其余候选人组成默认可交换块。
    名次取在每组的右端点；同组名次冲突时顺延到下一个空闲名次，冲突次数记在 metadata。

    Args:
        params: 螺旋参数，缺省为默认值

    Returns:
        SymmetricProfile，metadata 含 k、窗口数、拉伸系数、冲突数与连续极限比值估计
    """
    params = params or SpiralParams()
    bounds, stretch = window_boundaries(params)
    windows = len(bounds) - 1
    k = windows + 1
    m, layers = params.m, params.layers
    if m * params.a / PHI >= m - k:
        raise InvalidArgumentError("螺旋名次与底部名次区重叠，请减小 a 或增大 m")
    logger.info(f"生成螺旋实例：ℓ={layers}, resolution={params.resolution}, m={m}, k={k}")

    cuts = _group_cuts(bounds, params.resolution)
    groups = len(cuts) - 1
    others = k - (layers + 1)
    bottom = np.arange(m - others + 1, m + 1, dtype=np.int64)
    placed = np.empty((groups, k), dtype=np.int64)
    weights: list[Fraction] = []
    collisions = 0
    for g in range(groups):
        p, q = cuts[g], cuts[g + 1]
        weights.append(Fraction(q - p, SPIRAL_GRID))
        spiral_ids = [0] + [bisect.bisect_right(bounds, (t - 1) * SPIRAL_GRID + p) for t in range(1, layers + 1)]
        if len(set(spiral_ids)) != len(spiral_ids):
            raise InvalidArgumentError("窗口长度超过一层，同一选民在两层遇到同一个候选人")
        used: set[int] = set()
        for t, cid in enumerate(spiral_ids):
            rank = max(1, _layer_rank(params, t, q))
            while rank in used:
                rank += 1
                collisions += 1
            used.add(rank)
            placed[g, cid] = rank
        rest = np.setdiff1d(np.arange(k), spiral_ids)
        placed[g, rest] = bottom
    if collisions:
        logger.warning(f"螺旋实例共有 {collisions} 次名次冲突，已顺延")

    metadata = {
        "kind": "spiral",
        "params": params.model_dump(),
        "k": k,
        "windows": windows,
        "stretch": stretch,
        "collisions": collisions,
        "groups": groups,
        "continuum_ratio": continuum_ratio(params, k),
    }
    dummies = DummyBlock(DEFAULT_DUMMY_BLOCK, tuple(range(k, m)))
    return SymmetricProfile(
        m=m,
        critical=tuple(range(k)),
        weights=tuple(weights),
        placed=placed,
        blocks=(dummies,),
        metadata=metadata,
    )
