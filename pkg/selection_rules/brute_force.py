"""穷举最优委员会（Opt）"""

import itertools
import math
from fractions import Fraction

import numpy as np

from election_core import (
    Committee,
    EnumerationCapError,
    PreferenceProfile,
    SymmetricProfile,
    expected_score_symmetric,
    validate_sizes,
)
from election_core.constant import DEFAULT_ENUM_CAP
from election_core.profile import block_count_vectors
from utils.logger import setup_logger

from .greedy import weight_vector

logger = setup_logger(__name__)

# 每批评估的 (选民 × 委员会 × 成员) 元素上限
_BATCH_ELEMENTS = 1 << 21


def committee_totals(ranks: np.ndarray, committees: np.ndarray, s: int, weights: np.ndarray) -> np.ndarray:
    """
    一批委员会的加权前 s 小名次和（未归一化）

    Args:
        ranks: (n, m) 名次矩阵
        committees: (B, k) 候选人 id
        s: 取前 s 小
        weights: (n,) 权重向量（int64 / object / float64）

    Returns:
        (B,) 加权和
    """
    sub = ranks[:, committees]
    if s < committees.shape[1]:
        sub = np.partition(sub, s - 1, axis=2)[:, :, :s]
    return weights @ sub.sum(axis=2)


def batch_size(n: int, k: int) -> int:
    return max(1, _BATCH_ELEMENTS // max(1, n * k))


def _opt_explicit(profile: PreferenceProfile, k: int, s: int) -> tuple[Committee, Fraction]:
    ranks = profile.rank_matrix
    w_int, _ = profile.integer_weights
    weights = weight_vector(w_int, s * profile.m)
    combos = itertools.combinations(range(profile.m), k)
    size = batch_size(profile.n, k)

    best_total = None
    best_members: tuple[int, ...] = ()
    while batch := list(itertools.islice(combos, size)):
        totals = committee_totals(ranks, np.asarray(batch, dtype=np.int64), s, weights)
        i = int(np.argmin(totals))
        # 组合按字典序生成，严格小于才替换，保留字典序最小的最优解
        if best_total is None or totals[i] < best_total:
            best_total = int(totals[i])
            best_members = batch[i]
    return Committee(best_members), Fraction(best_total, sum(w_int))


def _opt_symmetric(sp: SymmetricProfile, k: int, s: int) -> tuple[Committee, Fraction]:
    sizes = [b.size for b in sp.blocks]
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for j in range(min(k, len(sp.critical)) + 1):
        for chosen in itertools.combinations(sorted(sp.critical), j):
            for counts in block_count_vectors(k - j, sizes):
                by_block = {b.name: c for b, c in zip(sp.blocks, counts, strict=True)}
                score = expected_score_symmetric(sp, chosen, by_block, s)
                members = sp.representative_committee(chosen, counts).members
                if best is None or (score, members) < best:
                    best = (score, members)
    return Committee(best[1]), best[0]


def brute_force_opt(
    profile: PreferenceProfile | SymmetricProfile, k: int, s: int = 1, cap: int | None = None
) -> tuple[Committee, Fraction]:
    """
    枚举所有大小为 k 的委员会，返回最小分数与字典序最小的最优委员会

    对称画像按（关键候选人子集, 每块个数）的等价类枚举，每类取块内 id 最小的成员作代表。

    Args:
        profile: 显式或对称画像
        k: 委员会大小
        s: 每个选民计入的代表个数
        cap: 枚举上限，默认 10^7

    Returns:
        (最优委员会, Opt 分数)
    """
    validate_sizes(profile.m, k, s)
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if isinstance(profile, SymmetricProfile):
        count = profile.class_count(k)
    else:
        count = math.comb(profile.m, k)
    if count > cap:
        raise EnumerationCapError(count, cap)

    logger.info(f"开始穷举：{count} 个委员会（类），m={profile.m}, k={k}, s={s}")
    if isinstance(profile, SymmetricProfile):
        committee, score = _opt_symmetric(profile, k, s)
    else:
        committee, score = _opt_explicit(profile, k, s)
    logger.info(f"穷举完成，Opt = {float(score):.6f}，委员会 {committee.members}")
    return committee, score
