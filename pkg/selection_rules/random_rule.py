"""均匀随机委员会基准"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from election_core import (
    Committee,
    InvalidArgumentError,
    PreferenceProfile,
    SymmetricProfile,
    expected_score_symmetric,
    validate_sizes,
)
from utils.logger import setup_logger

from .brute_force import batch_size, committee_totals
from .greedy import weight_vector

logger = setup_logger(__name__)


@dataclass(frozen=True)
class RandomBaselineResult:
    mean: float
    stddev: float
    best: Committee
    best_score: Fraction
    # 分数均值的精确值（float 模式下由均值换算）
    mean_score: Fraction
    trials: int
    seed: int | None = None


def _sample_explicit(profile: PreferenceProfile, k: int, s: int, rng: np.random.Generator, trials: int, exact: bool):
    ranks = profile.rank_matrix
    w_int, _ = profile.integer_weights
    total = sum(w_int)
    weights = weight_vector(w_int, s * profile.m) if exact else np.asarray(w_int, dtype=np.float64)
    size = batch_size(profile.n, k)

    values: list = []
    best_total = None
    best_members: tuple[int, ...] = ()
    done = 0
    while done < trials:
        count = min(size, trials - done)
        # 每行取 k 个最小随机键的下标，得到均匀的 k 子集
        keys = rng.random((count, profile.m))
        committees = np.argpartition(keys, k - 1, axis=1)[:, :k] if k < profile.m else np.argsort(keys, axis=1)
        totals = committee_totals(ranks, committees, s, weights)
        values.extend(totals.tolist())
        i = int(np.argmin(totals))
        if best_total is None or totals[i] < best_total:
            best_total = totals[i]
            best_members = tuple(int(c) for c in committees[i])
        done += count

    scores = np.asarray(values, dtype=np.float64) / total
    best = Committee(best_members)
    if exact:
        best_score = Fraction(int(best_total), total)
        mean_score = Fraction(sum(int(v) for v in values), total * trials)
    else:
        best_score = Fraction(float(best_total) / total)
        mean_score = Fraction(float(scores.mean()))
    return mean_score, float(scores.std(ddof=1)) if trials > 1 else 0.0, best, best_score


def _sample_symmetric(sp: SymmetricProfile, k: int, s: int, rng: np.random.Generator, trials: int):
    cache: dict[tuple, Fraction] = {}
    scores: list[Fraction] = []
    best: tuple[Fraction, Committee] | None = None
    for _ in range(trials):
        committee = Committee(tuple(int(c) for c in rng.choice(sp.m, size=k, replace=False)))
        chosen, counts = sp.classify(committee)
        key = (tuple(chosen), tuple(counts))
        if key not in cache:
            by_block = {b.name: c for b, c in zip(sp.blocks, counts, strict=True)}
            cache[key] = expected_score_symmetric(sp, chosen, by_block, s)
        score = cache[key]
        scores.append(score)
        if best is None or score < best[0]:
            best = (score, committee)
    floats = np.asarray([float(x) for x in scores], dtype=np.float64)
    mean_score = sum(scores, Fraction(0)) / trials
    return mean_score, float(floats.std(ddof=1)) if trials > 1 else 0.0, best[1], best[0]


def random_committee(
    profile: PreferenceProfile | SymmetricProfile,
    k: int,
    s: int = 1,
    seed: int | None = None,
    trials: int = 1,
    exact: bool = True,
) -> RandomBaselineResult:
    """
    抽 trials 个均匀随机委员会，统计分数的均值、标准差与最好的一个

    给定 seed 时结果可复现；随机源是调用方传入的种子构造的 numpy Generator。

    Args:
        profile: 显式或对称画像
        k: 委员会大小
        s: 每个选民计入的代表个数
        seed: 随机种子
        trials: 抽样次数
        exact: 显式画像上是否用精确整数累加

    Returns:
        RandomBaselineResult
    """
    validate_sizes(profile.m, k, s)
    if trials < 1:
        raise InvalidArgumentError(f"trials 必须 ≥ 1，实际 {trials}")
    rng = np.random.default_rng(seed)
    logger.info(f"开始随机基准：m={profile.m}, k={k}, s={s}, trials={trials}, seed={seed}")
    if isinstance(profile, SymmetricProfile):
        mean_score, stddev, best, best_score = _sample_symmetric(profile, k, s, rng, trials)
    else:
        mean_score, stddev, best, best_score = _sample_explicit(profile, k, s, rng, trials, exact)
    mean = float(mean_score)
    logger.info(f"随机基准完成：均值 {mean:.6f}，标准差 {stddev:.6f}")
    return RandomBaselineResult(mean, stddev, best, best_score, mean_score, trials, seed)
