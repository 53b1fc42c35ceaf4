"""α-近似核检查：阻挡候选人、最小 α、核内委员会的分数上界"""

import bisect
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from election_core import (
    Committee,
    InvalidArgumentError,
    PreferenceProfile,
    SymmetricProfile,
    score_committee,
    weighted_total,
)
from utils.logger import setup_logger
from utils.math_utils import as_fraction, format_fraction

logger = setup_logger(__name__)


@dataclass(frozen=True)
class CoreReport:
    """
    alpha: 近似系数
    blocking: (候选人, 支持者权重) 列表；对称画像的权重是选民比例
    threshold: 阻挡所需的支持者权重 α·N/k
    total_weight: 选民总权重 N（对称画像为 1）
    """

    alpha: Fraction
    blocking: tuple[tuple[int, Fraction], ...]
    threshold: Fraction
    total_weight: Fraction

    @property
    def in_core(self) -> bool:
        return not self.blocking

    def to_dict(self) -> dict:
        return {
            "alpha": format_fraction(self.alpha),
            "in_core": self.in_core,
            "threshold": format_fraction(self.threshold),
            "blocking": [{"candidate": c, "supporters": format_fraction(w)} for c, w in self.blocking],
        }


def _explicit_supporters(profile: PreferenceProfile, committee: Committee) -> dict[int, Fraction]:
    ranks = profile.rank_matrix
    best = ranks[:, list(committee.members)].min(axis=1)
    w_int, scale = profile.integer_weights
    outside = np.setdiff1d(np.arange(profile.m), committee.members)
    prefers = ranks[:, outside] < best[:, None]
    return {
        int(c): Fraction(weighted_total(w_int, prefers[:, j].astype(np.int64)), scale)
        for j, c in enumerate(outside)
    }


def _prob_all_above(slots_sorted: Sequence[int], draws: int, rank: int, exclude_one: bool = False) -> Fraction:
    """从本块空位中无放回抽 draws 个（exclude_one 时先去掉一个已占空位），全部名次都大于 rank 的概率"""
    if draws == 0:
        return Fraction(1)
    size = len(slots_sorted) - (1 if exclude_one else 0)
    above = len(slots_sorted) - bisect.bisect_right(slots_sorted, rank)
    return Fraction(math.comb(above, draws), math.comb(size, draws))


def _symmetric_supporters(sp: SymmetricProfile, committee: Committee) -> dict[int, Fraction]:
    chosen, counts = sp.classify(committee)
    cols = [sp.critical_index[c] for c in chosen]
    supporters: dict[int, Fraction] = {}
    chosen_set = set(chosen)
    outside_critical = [c for c in sp.critical if c not in chosen_set]
    block_share = [Fraction(0)] * len(sp.blocks)

    for g, weight in enumerate(sp.weights):
        best_fixed = int(sp.placed[g, cols].min()) if cols else sp.m + 1
        slots = [sorted(sp.group_slot_ranks(g, b)) for b in range(len(sp.blocks))]

        def beats_drawn(rank: int, own_block: int | None, slots=slots) -> Fraction:
            p = Fraction(1)
            for b, draws in enumerate(counts):
                p *= _prob_all_above(slots[b], draws, rank, exclude_one=(b == own_block))
            return p

        for c in outside_critical:
            rank = int(sp.placed[g, sp.critical_index[c]])
            if rank < best_fixed:
                supporters[c] = supporters.get(c, Fraction(0)) + weight * beats_drawn(rank, None)

        for b, block in enumerate(sp.blocks):
            if counts[b] == block.size:
                continue
            # 未入选的块成员位于本块某个空位，其余 counts[b] 个入选成员均匀落在剩下的空位上
            total = Fraction(0)
            for rank in slots[b]:
                if rank >= best_fixed:
                    break
                total += beats_drawn(rank, b)
            block_share[b] += weight * total / block.size

    for b, block in enumerate(sp.blocks):
        for c in sorted(set(block.members) - set(committee.members)):
            supporters[c] = block_share[b]
    return supporters


def supporter_weights(profile: PreferenceProfile | SymmetricProfile, committee: Committee) -> dict[int, Fraction]:
    """每个委员会外候选人的支持者权重：严格偏好它胜过委员会所有成员的选民权重之和"""
    committee.validate(profile.m)
    if isinstance(profile, SymmetricProfile):
        return _symmetric_supporters(profile, committee)
    return _explicit_supporters(profile, committee)


def _total_weight(profile: PreferenceProfile | SymmetricProfile) -> Fraction:
    if isinstance(profile, SymmetricProfile):
        return Fraction(1)
    return profile.total_weight


def core_blocking(
    profile: PreferenceProfile | SymmetricProfile, committee: Committee, alpha: float | Fraction
) -> CoreReport:
    """
    列出所有阻挡候选人：委员会外、至少 α·N/k 的选民（按权重）严格偏好它胜过全部委员会成员

    阈值按精确有理数比较，不做取整。

    Args:
        profile: 显式或对称画像
        committee: 委员会
        alpha: α > 0

    Returns:
        CoreReport
    """
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise InvalidArgumentError(f"α 必须为正，实际 {alpha}")
    supporters = supporter_weights(profile, committee)
    total = _total_weight(profile)
    threshold = alpha * total / committee.k
    blocking = tuple(sorted((c, w) for c, w in supporters.items() if w > 0 and w >= threshold))
    logger.debug(f"核检查 α={alpha}：阈值 {float(threshold):.6f}，阻挡候选人 {[c for c, _ in blocking]}")
    return CoreReport(alpha, blocking, threshold, total)


def minimal_core_alpha(profile: PreferenceProfile | SymmetricProfile, committee: Committee) -> Fraction:
    """
    max_c 支持者权重·k/N；委员会对所有严格大于该值的 α 都在 α-核中
    """
    supporters = supporter_weights(profile, committee)
    top = max(supporters.values(), default=Fraction(0))
    return top * committee.k / _total_weight(profile)


def core_score_bounds(m: int, k: int, alpha: Fraction) -> tuple[Fraction, Fraction]:
    """
    (计数上界 1 + α(m−k)/k, 形式上界 α(k+1)/k·(m+1)/(k+1) = α(m+1)/k)

    当 α ≥ k/(k+1) 时计数上界不超过形式上界。
    """
    alpha = as_fraction(alpha)
    return 1 + alpha * (m - k) / k, alpha * (m + 1) / k


def verify_core_score_bound(
    profile: PreferenceProfile | SymmetricProfile, committee: Committee, alpha: float | Fraction
) -> bool:
    """
    α-核内委员会的 1-Borda 分数上界检查（精确比较）

    每个选民在最优成员之前的候选人都是其支持的委员会外候选人，而每个外部候选人
    的支持者权重都小于 α·N/k，因此分数 < 1 + α(m−k)/k；α ≥ k/(k+1) 时再检查 α(m+1)/k。

    Raises:
        InvalidArgumentError: 委员会不在 α-核中
    """
    alpha = as_fraction(alpha)
    report = core_blocking(profile, committee, alpha)
    if not report.in_core:
        raise InvalidArgumentError(f"委员会不在 {alpha}-核中，阻挡候选人 {[c for c, _ in report.blocking]}")
    k = committee.k
    score = score_committee(profile, committee, 1)
    counting, stated = core_score_bounds(profile.m, k, alpha)
    ok = score <= counting
    if alpha * (k + 1) >= k:
        ok = ok and score <= stated
    if not ok:
        logger.warning(f"核分数上界不成立：分数 {score}，计数上界 {counting}，形式上界 {stated}")
    return ok
