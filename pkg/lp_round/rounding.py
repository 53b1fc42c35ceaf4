"""依赖舍入与 LP 混合选取"""

from dataclasses import dataclass

import numpy as np

from election_core import Committee, InvalidArgumentError, PreferenceProfile, SymmetricProfile, score_committee
from election_core.constant import ROUNDING_TOL
from election_core.scoring import Score, validate_sizes
from utils.logger import setup_logger
from utils.math_utils import ceil_sqrt_ratio

from .lp_model import build_lp
from .solution import FractionalSolution, solve_lp
from .solvers import LpSolver

logger = setup_logger(__name__)


def _snap(value: float) -> float:
    if value < ROUNDING_TOL:
        return 0.0
    if value > 1.0 - ROUNDING_TOL:
        return 1.0
    return value


def _fractional(value: float) -> bool:
    return 0.0 < value < 1.0


def dependent_round(y, rng: np.random.Generator) -> np.ndarray:
    """
    依赖舍入：保持每个分量的期望与总和不变，输出 0/1 向量

    每次取下标最小的两个分数分量 (a, b)，记 α = min(1 − y_a, y_b)，β = min(y_a, 1 − y_b)，
    以概率 β/(α+β) 令 y_a += α, y_b −= α，否则 y_a −= β, y_b += β；每步至少固定一个分量。

    Args:
        y: [0,1] 内、总和为整数的质量
        rng: numpy 随机数生成器

    Returns:
        恰好有 round(Σy) 个 1 的 int 向量
    """
    y = np.asarray(y, dtype=np.float64).copy()
    if y.size and (y.min() < -ROUNDING_TOL or y.max() > 1.0 + ROUNDING_TOL):
        raise InvalidArgumentError("依赖舍入的输入必须在 [0, 1] 内")
    total = float(y.sum())
    target = round(total)
    if abs(total - target) > ROUNDING_TOL * max(1.0, float(y.size)):
        raise InvalidArgumentError(f"依赖舍入要求整数总和，实际 Σy = {total}")

    values = [_snap(float(v)) for v in y]
    a: int | None = None
    for b in (i for i, v in enumerate(values) if _fractional(v)):
        if a is None:
            a = b
            continue
        alpha = min(1.0 - values[a], values[b])
        beta = min(values[a], 1.0 - values[b])
        if rng.random() < beta / (alpha + beta):
            values[a], values[b] = values[a] + alpha, values[b] - alpha
        else:
            values[a], values[b] = values[a] - beta, values[b] + beta
        values[a], values[b] = _snap(values[a]), _snap(values[b])
        if not _fractional(values[a]):
            a = b if _fractional(values[b]) else None

    out = np.asarray([1 if v >= 0.5 else 0 for v in values], dtype=np.int64)
    if int(out.sum()) != target:
        raise InvalidArgumentError(f"依赖舍入数值失衡：得到 {int(out.sum())} 个 1，期望 {target}")
    return out


@dataclass(frozen=True)
class RoundingOutcome:
    t1: tuple[int, ...]
    t2: tuple[int, ...]
    committee: Committee
    seed: int | None = None

    def to_dict(self) -> dict:
        return {"t1": list(self.t1), "t2": list(self.t2), "committee": list(self.committee.members), "seed": self.seed}


def rounded_size(k: int, s: int) -> int:
    """|T1| = ⌊k(1 − 1/√s)⌋ = k − ⌈k/√s⌉"""
    return k - ceil_sqrt_ratio(k, s)


def lp_round_select(
    profile: PreferenceProfile | SymmetricProfile,
    k: int,
    s: int,
    solver: str | LpSolver | None = "auto",
    seed: int | None = None,
    solution: FractionalSolution | None = None,
) -> tuple[Committee, RoundingOutcome, Score]:
    """
    LP 混合选取：解松弛得到 ỹ，缩放到总和 |T1| 后依赖舍入得到 T1，
    再从其余候选人中均匀抽 k − |T1| 个作为 T2

    Args:
        profile: 显式或对称画像
        k: 委员会大小
        s: 每个选民计入的代表个数（s = 1 时退化为纯随机，拒绝）
        solver: LP 求解器
        seed: 随机种子
        solution: 已求好的松弛解（多个种子复用同一个解）

    Returns:
        (委员会, 舍入过程, 分数)
    """
    validate_sizes(profile.m, k, s)
    if s == 1:
        raise InvalidArgumentError("s = 1 时缩放系数 1 − 1/√s 为 0，算法退化为随机委员会")
    if solution is None:
        solution = solve_lp(build_lp(profile, k, s), solver)

    size_t1 = rounded_size(k, s)
    rng = np.random.default_rng(seed)
    y = np.clip(solution.y, 0.0, 1.0)
    if size_t1 > 0:
        # Σy ≈ k > |T1|，缩放系数小于 1，不会越过上界
        scaled = y * (size_t1 / y.sum())
        t1 = np.flatnonzero(dependent_round(scaled, rng))
    else:
        t1 = np.array([], dtype=np.int64)
    rest = np.setdiff1d(np.arange(profile.m), t1)
    t2 = np.sort(rng.choice(rest, size=k - len(t1), replace=False))

    committee = Committee.of(np.concatenate([t1, t2]).tolist(), profile.m)
    outcome = RoundingOutcome(tuple(int(c) for c in t1), tuple(int(c) for c in t2), committee, seed)
    score = score_committee(profile, committee, s)
    logger.info(f"LP 混合选取完成：|T1|={len(t1)}, |T2|={len(t2)}, 分数 {float(score):.6f}")
    return committee, outcome, score
