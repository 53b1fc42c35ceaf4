"""
Banzhaf 规则与随机补全期望

把已选集合 T 随机补全到 k 个（从 C \\ T 无放回均匀抽取），补全后委员会的
期望 s-Borda 分数可以按选民精确计算：固定名次是 T 的名次，抽样池是其余名次。
Banzhaf 每一步选使该期望最小的候选人。
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np

from election_core import (
    Committee,
    InvalidArgumentError,
    PreferenceProfile,
    RankPool,
    SymmetricProfile,
    expected_smallest_sum,
    rand_benchmark,
    ranks_to_intervals,
    validate_sizes,
)
from election_core.profile import block_count_vectors
from election_core.scoring import voter_completion_numerator
from utils.logger import setup_logger
from utils.math_utils import comb

from .trace import SelectionTrace

logger = setup_logger(__name__)


def _completion_explicit(profile: PreferenceProfile, fixed: Sequence[int], k: int, s: int) -> Fraction:
    draws = k - len(fixed)
    w_int, _ = profile.integer_weights
    if fixed:
        sub = np.sort(profile.rank_matrix[:, list(fixed)], axis=1).tolist()
    else:
        sub = [[] for _ in range(profile.n)]
    total = 0
    den = 1
    for w, ranks in zip(w_int, sub, strict=True):
        num, den = voter_completion_numerator(ranks, profile.m, draws, s)
        total += w * num
    return Fraction(total, den * sum(w_int))


def _completion_symmetric(sp: SymmetricProfile, cols: Sequence[int], counts: Sequence[int], k: int, s: int) -> Fraction:
    """
    对称画像：剩余名额在 “未选关键候选人” 与各块剩余成员之间服从多元超几何分布，
    对每种分配方式逐组计算精确期望
    """
    remaining = k - len(cols) - sum(counts)
    chosen = set(cols)
    free_cols = [c for c in range(len(sp.critical)) if c not in chosen]
    avail = [block.size - counts[b] for b, block in enumerate(sp.blocks)]
    denominator = comb(len(free_cols) + sum(avail), remaining)

    total = Fraction(0)
    for split in block_count_vectors(remaining, [len(free_cols), *avail]):
        crit_draws, extra = split[0], split[1:]
        multiplicity = comb(len(free_cols), crit_draws)
        for a, j in zip(avail, extra, strict=True):
            multiplicity *= comb(a, j)
        if not multiplicity:
            continue
        bumped = [c + j for c, j in zip(counts, extra, strict=True)]
        value = Fraction(0)
        for g, weight in enumerate(sp.weights):
            fixed = sp.placed[g, list(cols)].tolist()
            pools = sp.group_pools(g, bumped)
            if crit_draws:
                free_ranks = sp.placed[g, free_cols].tolist()
                pools.append(RankPool(ranks_to_intervals(free_ranks), len(free_ranks), crit_draws))
            value += weight * expected_smallest_sum(fixed, pools, s)
        total += multiplicity * value
    return total / denominator


def _split_symmetric(sp: SymmetricProfile, fixed: Iterable[int]) -> tuple[list[int], list[int]]:
    cols: list[int] = []
    counts = [0] * len(sp.blocks)
    for c in fixed:
        if c in sp.critical_index:
            cols.append(sp.critical_index[c])
        else:
            counts[sp.block_of[c]] += 1
    return cols, counts


def expected_completion_score(
    profile: PreferenceProfile | SymmetricProfile, fixed: Iterable[int], k: int, s: int = 1
) -> Fraction:
    """
    把 fixed 随机补全到 k 个候选人后的精确期望 s-Borda 分数

    Args:
        profile: 显式或对称画像
        fixed: 已确定的候选人集合
        k: 目标委员会大小
        s: 每个选民计入的代表个数

    Returns:
        精确有理数期望
    """
    fixed = sorted(set(int(c) for c in fixed))
    if len(fixed) > k:
        raise InvalidArgumentError(f"已确定 {len(fixed)} 个候选人，超过委员会大小 k={k}")
    validate_sizes(profile.m, k, s)
    if fixed and (fixed[0] < 0 or fixed[-1] >= profile.m):
        raise InvalidArgumentError(f"候选人 id 超出范围 0..{profile.m - 1}: {fixed}")
    if isinstance(profile, SymmetricProfile):
        cols, counts = _split_symmetric(profile, fixed)
        return _completion_symmetric(profile, cols, counts, k, s)
    return _completion_explicit(profile, fixed, k, s)


def banzhaf(profile: PreferenceProfile | SymmetricProfile, k: int, s: int = 1) -> tuple[Committee, SelectionTrace]:
    """
    Banzhaf 规则：第 j 步选使 expected_completion_score(T_{j-1} ∪ {c}) 最小的候选人

    选取记录中的分数是该补全期望；最后一步没有补全，等于委员会的实际分数。
    """
    validate_sizes(profile.m, k, s)
    logger.info(f"开始 banzhaf：m={profile.m}, k={k}, s={s}")
    trace = SelectionTrace("banzhaf", k, s)
    objective = rand_benchmark(profile.m, k, s)
    chosen: list[int] = []

    symmetric = isinstance(profile, SymmetricProfile)
    for step in range(k):
        best: tuple[Fraction, int] | None = None
        for c in _candidates(profile, chosen):
            value = expected_completion_score(profile, [*chosen, c], k, s)
            if best is None or value < best[0]:
                best = (value, c)
        value, c = best
        block = profile.blocks[profile.block_of[c]].name if symmetric and c in profile.block_of else None
        trace.record(c, value, objective, block)
        chosen.append(c)
        objective = value
        logger.debug(f"banzhaf 第 {step + 1} 步选择候选人 {c}，补全期望 {float(value):.6f}")
    logger.info(f"banzhaf 完成，分数 {float(objective):.6f}")
    return Committee.of(chosen, profile.m), trace


def _candidates(profile: PreferenceProfile | SymmetricProfile, chosen: Sequence[int]) -> list[int]:
    """按 id 升序的待评估候选人；对称画像上每块只取 id 最小的未入选成员"""
    taken = set(chosen)
    if not isinstance(profile, SymmetricProfile):
        return [c for c in range(profile.m) if c not in taken]
    out = [c for c in profile.critical if c not in taken]
    for block in profile.blocks:
        rest = [c for c in sorted(block.members) if c not in taken]
        if rest:
            out.append(rest[0])
    return sorted(out)
