"""
超几何顺序统计量核心

对给定的固定名次集合 F 与若干独立抽样池（每池无放回抽 d_b 个），记
X_t = |{F 中 < t 的名次}| + Σ_b H_b(t)，H_b(t) 为第 b 池中被抽到且 < t 的个数。
前 s 小名次之和的期望为 Σ_t E[(s − X_t)+]，第 s 小名次 Θ 满足
E[(Θ − r)+] = Σ_{t>r} Pr[X_t ≤ s − 1]。

沿 t 的推进被压缩成分段：固定名次与池区间之间的常数段，以及池区间内部
u_b 逐一递增的“斜坡”段。斜坡段用前缀恒等式
Σ_{v=0}^{U} C(v,i)C(P−v,d−i) = C(P+1,d+1) − Σ_{j=0}^{i} C(U+1,j)C(P−U,d+1−j)
一次求和，全部在公分母 Π_b C(P_b, d_b) 上做整数运算。
"""

import heapq
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from utils.math_utils import comb

from .exceptions import InvalidArgumentError
from .profile import RankPool, ranks_to_intervals


@dataclass(frozen=True)
class _Segment:
    t_lo: int
    t_hi: int
    fixed_below: int
    # 各池在 t_lo 处的 u 值
    below: tuple[int, ...]
    # 斜坡池下标，-1 表示常数段
    ramp: int


def _pool_pmf(u: int, pool: RankPool, limit: int) -> list[int]:
    return [comb(u, i) * comb(pool.size - u, pool.draws - i) for i in range(min(pool.draws, limit) + 1)]


def _convolve(a: list[int], b: list[int], limit: int) -> list[int]:
    out = [0] * min(len(a) + len(b) - 1, limit + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j > limit:
                break
            out[i + j] += x * y
    return out


def _prefix_count(upper: int, pool: RankPool, i: int) -> int:
    """Σ_{v=0}^{upper} C(v,i)·C(P−v,d−i)"""
    if upper < 0:
        return 0
    size, draws = pool.size, pool.draws
    head = sum(comb(upper + 1, j) * comb(size - upper, draws + 1 - j) for j in range(i + 1))
    return comb(size + 1, draws + 1) - head


def _segments(fixed: Sequence[int], pools: Sequence[RankPool], s: int) -> Iterator[_Segment]:
    events = heapq.merge(
        ((int(r), int(r), -1) for r in sorted(fixed)),
        *(((lo, hi, b) for lo, hi in pool.intervals) for b, pool in enumerate(pools)),
    )
    cur_t = 1
    fixed_below = 0
    below = [0] * len(pools)
    for lo, hi, b in events:
        if fixed_below >= s:
            return
        if cur_t <= lo:
            # t = lo 时名次 lo 本身还不算 “< t”
            yield _Segment(cur_t, lo, fixed_below, tuple(below), -1)
        if b < 0:
            fixed_below += 1
            cur_t = lo + 1
            continue
        if hi > lo:
            ramp_below = list(below)
            ramp_below[b] += 1
            yield _Segment(lo + 1, hi, fixed_below, tuple(ramp_below), b)
        below[b] += hi - lo + 1
        cur_t = hi + 1


def _segment_total(
    seg: _Segment, lo: int, hi: int, pools: Sequence[RankPool], s: int, coeff: Sequence[int]
) -> int:
    """段内 t ∈ [lo, hi] 上 Σ_t E[coeff(X_t)] 的分子（公分母 Π C(P_b, d_b)）"""
    if hi < lo:
        return 0
    limit = s - seg.fixed_below - 1
    if limit < 0:
        return 0
    shift = seg.fixed_below
    if seg.ramp < 0:
        dist = [1]
        for b, pool in enumerate(pools):
            dist = _convolve(dist, _pool_pmf(seg.below[b], pool, limit), limit)
        value = sum(p * coeff[shift + x] for x, p in enumerate(dist) if p)
        return value * (hi - lo + 1)

    rest = [1]
    for b, pool in enumerate(pools):
        if b != seg.ramp:
            rest = _convolve(rest, _pool_pmf(seg.below[b], pool, limit), limit)
    pool = pools[seg.ramp]
    u_first = seg.below[seg.ramp] + (lo - seg.t_lo)
    u_last = seg.below[seg.ramp] + (hi - seg.t_lo)
    total = 0
    for i in range(min(pool.draws, limit) + 1):
        weight = sum(p * coeff[shift + i + r] for r, p in enumerate(rest[: limit - i + 1]) if p)
        if weight:
            total += weight * (_prefix_count(u_last, pool, i) - _prefix_count(u_first - 1, pool, i))
    return total


def _denominator(pools: Iterable[RankPool]) -> int:
    den = 1
    for pool in pools:
        den *= comb(pool.size, pool.draws)
    return den


def _active(pools: Iterable[RankPool]) -> list[RankPool]:
    return [p for p in pools if p.draws > 0]


def smallest_sum_numerator(fixed: Sequence[int], pools: Sequence[RankPool], s: int) -> tuple[int, int]:
    """
    前 s 小名次之和期望的 (分子, 分母)

    调用方保证 |fixed| + Σ draws ≥ s 且所有名次互不相同；
    分母只依赖各池的 (size, draws)，同一批选民可以直接累加分子。
    """
    pools = _active(pools)
    coeff = [s - x for x in range(s)]
    total = sum(_segment_total(seg, seg.t_lo, seg.t_hi, pools, s, coeff) for seg in _segments(fixed, pools, s))
    return total, _denominator(pools)


def expected_smallest_sum(fixed: Sequence[int], pools: Sequence[RankPool], s: int) -> Fraction:
    num, den = smallest_sum_numerator(fixed, pools, s)
    return Fraction(num, den)


def expected_excess(
    fixed: Sequence[int], pools: Sequence[RankPool], s: int, thresholds: Sequence[int]
) -> list[Fraction]:
    """
    对每个 r 计算 E[(Θ − r)+]，Θ 为第 s 小名次

    新加入一个名次 r 的候选人时，前 s 小名次之和恰好减少 (Θ − r)+。

    Args:
        fixed: 固定名次
        pools: 抽样池
        s: 取前 s 小
        thresholds: 待查询的名次 r

    Returns:
        与 thresholds 同序的期望列表
    """
    pools = _active(pools)
    coeff = [1] * s
    segments = list(_segments(fixed, pools, s))
    den = _denominator(pools)
    seg_totals = [_segment_total(seg, seg.t_lo, seg.t_hi, pools, s, coeff) for seg in segments]
    grand = sum(seg_totals)

    results: list[Fraction] = []
    for r in thresholds:
        # Σ_{t ≤ r}
        prefix = 0
        for seg, seg_total in zip(segments, seg_totals, strict=True):
            if seg.t_hi <= r:
                prefix += seg_total
            elif seg.t_lo <= r:
                prefix += _segment_total(seg, seg.t_lo, r, pools, s, coeff)
            else:
                break
        results.append(Fraction(grand - prefix, den))
    return results


def expected_order_stat(m: int, k: int, t: int) -> Fraction:
    """均匀随机 k 子集中第 t 小名次的期望 t(m+1)/(k+1)"""
    if not 1 <= t <= k <= m:
        raise InvalidArgumentError(f"需要 1 ≤ t ≤ k ≤ m，实际 t={t}, k={k}, m={m}")
    return Fraction(t * (m + 1), k + 1)


def expected_order_stat_sum(fixed_ranks: Iterable[int], pool: Iterable[int], draws: int, s: int) -> Fraction:
    """
    从 pool 中无放回抽 draws 个名次并入 fixed_ranks 后，前 s 小名次之和的精确期望

    Args:
        fixed_ranks: 必然在场的名次
        pool: 可抽取的名次
        draws: 抽取个数
        s: 求和个数

    Returns:
        精确有理数期望
    """
    fixed = sorted(int(r) for r in fixed_ranks)
    pool_ranks = [int(r) for r in pool]
    if s < 1:
        raise InvalidArgumentError("s 必须 ≥ 1")
    if draws < 0 or draws > len(pool_ranks):
        raise InvalidArgumentError(f"抽取数 {draws} 超出池大小 {len(pool_ranks)}")
    if len(fixed) + draws < s:
        raise InvalidArgumentError(f"固定 {len(fixed)} 个加抽取 {draws} 个不足 s={s}")
    everything = fixed + pool_ranks
    if len(set(everything)) != len(everything) or min(everything, default=1) < 1:
        raise InvalidArgumentError("固定名次与池名次必须是互不相同的正整数")
    pools = [RankPool(ranks_to_intervals(pool_ranks), len(pool_ranks), draws)]
    return expected_smallest_sum(fixed, pools, s)
