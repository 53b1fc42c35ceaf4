"""随机画像与全排列画像"""

import itertools
import math

import numpy as np

from election_core import InvalidArgumentError, PreferenceProfile
from election_core.constant import ALL_PERMUTATIONS_MAX_M
from utils.logger import setup_logger
from utils.math_utils import as_fraction

logger = setup_logger(__name__)


def gen_random(m: int, n: int, k: int | None = None, seed: int | None = None) -> PreferenceProfile:
    """
    n 个独立均匀随机排列

    Args:
        m: 候选人数
        n: 选民数
        k: 下游使用的委员会大小（只做范围校验）
        seed: 随机种子

    Returns:
        PreferenceProfile
    """
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"需要 m, n ≥ 1，实际 m={m}, n={n}")
    if k is not None and not 1 <= k <= m:
        raise InvalidArgumentError(f"需要 1 ≤ k ≤ m，实际 k={k}, m={m}")
    rng = np.random.default_rng(seed)
    orders = rng.permuted(np.tile(np.arange(m, dtype=np.int64), (n, 1)), axis=1)
    logger.debug(f"生成随机画像 m={m}, n={n}, seed={seed}")
    return PreferenceProfile.from_orders(m, orders.tolist())


def gen_all_permutations(m: int) -> PreferenceProfile:
    """每种排列恰好一个选民（m! 个选民）"""
    if m < 1:
        raise InvalidArgumentError("候选人数 m 必须 ≥ 1")
    if m > ALL_PERMUTATIONS_MAX_M:
        raise InvalidArgumentError(
            f"m={m} 时需要 {math.factorial(m)} 个选民，超过显式上限 m ≤ {ALL_PERMUTATIONS_MAX_M}；"
            "请改用 SymmetricProfile（全部候选人作为一个可交换块）"
        )
    return PreferenceProfile.from_orders(m, itertools.permutations(range(m)))


def concentration_voter_count(m: int, k: int, epsilon: float) -> int:
    """
    使均匀随机画像以大于 1/2 的概率满足 Opt > (1 − ε)·Rand 的选民数 ⌈m(k+1)²/ε²⌉
    """
    if not 0 < epsilon < 1:
        raise InvalidArgumentError(f"ε 必须在 (0, 1) 内，实际 {epsilon}")
    if not 1 <= k <= m:
        raise InvalidArgumentError(f"需要 1 ≤ k ≤ m，实际 k={k}, m={m}")
    eps = as_fraction(epsilon)
    return math.ceil(m * (k + 1) ** 2 / eps**2)
