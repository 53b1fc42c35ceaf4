"""论证用的三个对称构造：委员会单调性缺口、核反例、s-Borda 下 Greedy 的坏实例"""

import math
from fractions import Fraction

from election_core import DummyBlock, InvalidArgumentError, SymmetricProfile
from election_core.constant import MONOTONE_GAP_DEFAULT_A, MONOTONE_GAP_DEFAULT_B
from utils.logger import setup_logger

logger = setup_logger(__name__)

# 核反例允许的最小 m（m = 8 时 6 个可交换候选人仍可物化核对）
CORE_COUNTEREXAMPLE_MIN_M = 8


def gen_monotonicity_gap(
    m: int, a: float = MONOTONE_GAP_DEFAULT_A, b: float = MONOTONE_GAP_DEFAULT_B
) -> SymmetricProfile:
    """
    两类可交换候选人：X 类均匀占据名次 [⌈am⌉, ⌊bm⌋]，Y 类占据其余名次

    X 类 id 较小，平局时默认规则偏向 X。

    Args:
        m: 候选人数
        a: 区间左端比例
        b: 区间右端比例

    Returns:
        单组、无关键候选人、两个可交换块的 SymmetricProfile
    """
    if not 0 < a < b < 1:
        raise InvalidArgumentError(f"需要 0 < a < b < 1，实际 a={a}, b={b}")
    x_lo, x_hi = math.ceil(a * m), math.floor(b * m)
    x_size = x_hi - x_lo + 1
    y_size = m - x_size
    if x_lo < 2 or x_hi > m - 1 or x_size < 2 or y_size < 2:
        raise InvalidArgumentError(f"m={m} 太小，X/Y 两类都至少需要 2 个候选人且 Y 两侧非空")

    x_block = DummyBlock("X", tuple(range(x_size)))
    y_block = DummyBlock("Y", tuple(range(x_size, m)))
    slots = [[[(x_lo, x_hi)], [(1, x_lo - 1), (x_hi + 1, m)]]]
    logger.debug(f"单调性缺口实例：m={m}, X 名次 [{x_lo}, {x_hi}]，|X|={x_size}, |Y|={y_size}")
    return SymmetricProfile.from_groups(
        m,
        critical=(),
        groups=[(Fraction(1), {})],
        blocks=(x_block, y_block),
        slots=slots,
        metadata={"kind": "monotone-gap", "a": a, "b": b, "x_ranks": [x_lo, x_hi]},
    )


def gen_core_counterexample(m: int) -> SymmetricProfile:
    """
    三个等权组，关键候选人 c1 = 0、c2 = 1：
    第一组 c1 第一、c2 第二；第二组 c2 第一、c1 垫底；第三组 c2 倒数第二、c1 垫底。
    下游使用 k = ⌊√m⌋ − 1。
    """
    if m < CORE_COUNTEREXAMPLE_MIN_M:
        raise InvalidArgumentError(f"核反例需要 m ≥ {CORE_COUNTEREXAMPLE_MIN_M}，实际 m={m}")
    third = Fraction(1, 3)
    groups = [
        (third, {0: 1, 1: 2}),
        (third, {0: m, 1: 1}),
        (third, {0: m, 1: m - 1}),
    ]
    k = math.isqrt(m) - 1
    return SymmetricProfile.from_groups(
        m,
        critical=(0, 1),
        groups=groups,
        metadata={"kind": "core-cex", "k": k, "c1": 0, "c2": 1, "perfect_square": math.isqrt(m) ** 2 == m},
    )


def gen_sborda_bad(m: int, k: int, s: int) -> SymmetricProfile:
    """
    s-Borda 下 Greedy 的坏实例

    共 k/s 个等权组；第 j 组把 c_{i(k/s)+j}（i = 0..s−1）放在名次 i+1，
    其余关键候选人按 id 顺序放在底部，可交换候选人填满中间的名次。

    Args:
        m: 候选人数
        k: 委员会大小（等于关键候选人数）
        s: 每个选民计入的代表个数

    Returns:
        SymmetricProfile
    """
    if s < 1 or k < s or k % s != 0:
        raise InvalidArgumentError(f"需要 s ≥ 1 且 s 整除 k，实际 k={k}, s={s}")
    if m <= k:
        raise InvalidArgumentError(f"需要 m > k 以容纳可交换候选人，实际 m={m}, k={k}")
    stride = k // s
    weight = Fraction(1, stride)
    groups = []
    for j in range(stride):
        top = [i * stride + j for i in range(s)]
        mapping = {c: i + 1 for i, c in enumerate(top)}
        rest = [c for c in range(k) if c not in mapping]
        base = m - len(rest) + 1
        mapping.update({c: base + i for i, c in enumerate(rest)})
        groups.append((weight, mapping))
    logger.debug(f"s-Borda 坏实例：m={m}, k={k}, s={s}, 组数 {stride}")
    return SymmetricProfile.from_groups(
        m,
        critical=tuple(range(k)),
        groups=groups,
        metadata={"kind": "sborda-bad", "k": k, "s": s, "groups": stride},
    )
