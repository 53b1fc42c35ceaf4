"""s-Borda 计分：显式画像精确计分、随机基准、对称画像的期望计分"""

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

import numpy as np

from utils.logger import setup_logger

from .exceptions import InvalidArgumentError
from .order_stats import expected_smallest_sum, smallest_sum_numerator
from .profile import Committee, PreferenceProfile, RankPool, SymmetricProfile, complement_intervals

logger = setup_logger(__name__)

Score = Fraction

_INT64_SAFE = 2**62


def weighted_total(weights: Sequence[int], values: Sequence[int] | np.ndarray) -> int:
    """Σ w_i·v_i 的精确整数结果；规模安全时走 numpy int64"""
    values = np.asarray(values, dtype=np.int64)
    if values.size == 0:
        return 0
    bound = max(abs(int(x)) for x in weights) * int(np.abs(values).max()) * len(values)
    if bound < _INT64_SAFE:
        return int(np.dot(np.asarray(weights, dtype=np.int64), values))
    return sum(int(a) * int(b) for a, b in zip(weights, values.tolist(), strict=True))


def _check_s(s: int, k: int) -> None:
    if not 1 <= s <= k:
        raise InvalidArgumentError(f"需要 1 ≤ s ≤ k，实际 s={s}, k={k}")


def validate_sizes(m: int, k: int, s: int) -> None:
    """所有选举规则共用的前置条件 1 ≤ s ≤ k ≤ m"""
    if k > m:
        raise InvalidArgumentError(f"委员会大小 k={k} 超过候选人数 m={m}")
    _check_s(s, k)


def per_voter_costs(profile: PreferenceProfile, committee: Committee, s: int) -> np.ndarray:
    """每个选民前 s 小名次之和（未加权）"""
    committee.validate(profile.m)
    _check_s(s, committee.k)
    sub = profile.rank_matrix[:, list(committee.members)]
    if s < committee.k:
        sub = np.partition(sub, s - 1, axis=1)[:, :s]
    return sub.sum(axis=1)


def score_s_borda(profile: PreferenceProfile, committee: Committee, s: int) -> Score:
    """
    委员会的 s-Borda 分数：(1/n)·Σ_v w_v·(v 在委员会中前 s 小名次之和)

    Args:
        profile: 显式画像
        committee: 委员会
        s: 每个选民计入的代表个数

    Returns:
        精确有理数分数
    """
    costs = per_voter_costs(profile, committee, s)
    w_int, _ = profile.integer_weights
    return Fraction(weighted_total(w_int, costs), sum(w_int))


def score_satisfaction(profile: PreferenceProfile | SymmetricProfile, committee: Committee, s: int) -> Score:
    """满意度版本：s·(m+1) − s-Borda 分数"""
    return s * (profile.m + 1) - score_committee(profile, committee, s)


def rand_benchmark(m: int, k: int, s: int = 1) -> Score:
    """随机委员会的期望分数 s(s+1)/2·(m+1)/(k+1)"""
    if not 1 <= s <= k <= m:
        raise InvalidArgumentError(f"需要 1 ≤ s ≤ k ≤ m，实际 s={s}, k={k}, m={m}")
    return Fraction(s * (s + 1), 2) * Fraction(m + 1, k + 1)


def _group_value(sp: SymmetricProfile, g: int, columns: Sequence[int], counts: Sequence[int], s: int) -> Fraction:
    fixed = sp.placed[g, list(columns)].tolist() if columns else []
    return expected_smallest_sum(fixed, sp.group_pools(g, counts), s)


def expected_score_symmetric(
    sp: SymmetricProfile, chosen_critical: Iterable[int], dummy_count: int | Mapping[str, int], s: int
) -> Score:
    """
    对称画像上委员会的精确期望 s-Borda 分数

    由于同一块内的候选人可交换，只需知道入选的关键候选人与每块入选个数。

    Args:
        sp: 对称画像
        chosen_critical: 入选的关键候选人
        dummy_count: 默认块的入选个数，或 {块名: 个数}
        s: 每个选民计入的代表个数

    Returns:
        精确有理数期望分数
    """
    chosen = sorted(set(int(c) for c in chosen_critical))
    missing = [c for c in chosen if c not in sp.critical_index]
    if missing:
        raise InvalidArgumentError(f"不是关键候选人: {missing}")
    counts = sp.dummy_counts(dummy_count)
    size = len(chosen) + sum(counts)
    if s < 1 or size < s:
        raise InvalidArgumentError(f"委员会大小 {size} 不足 s={s}")
    columns = [sp.critical_index[c] for c in chosen]
    total = Fraction(0)
    for g, weight in enumerate(sp.weights):
        total += weight * _group_value(sp, g, columns, counts, s)
    return total


def score_symmetric_committee(sp: SymmetricProfile, committee: Committee, s: int) -> Score:
    chosen, counts = sp.classify(committee)
    _check_s(s, committee.k)
    return expected_score_symmetric(sp, chosen, {b.name: c for b, c in zip(sp.blocks, counts, strict=True)}, s)


def score_committee(profile: PreferenceProfile | SymmetricProfile, committee: Committee, s: int) -> Score:
    """按画像类型分派的统一计分入口"""
    if isinstance(profile, SymmetricProfile):
        return score_symmetric_committee(profile, committee, s)
    return score_s_borda(profile, committee, s)


def voter_completion_numerator(ranks: Sequence[int], m: int, draws: int, s: int) -> tuple[int, int]:
    """
    单个选民：固定名次为 ranks，其余 m − |ranks| 个名次中随机补 draws 个，前 s 小名次和期望的 (分子, 分母)
    """
    fixed = sorted(int(r) for r in ranks)
    pool = RankPool(complement_intervals(fixed, m), m - len(fixed), draws)
    return smallest_sum_numerator(fixed, [pool], s)
