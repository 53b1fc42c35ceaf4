"""
Greedy 规则

每一步从未入选候选人中选使 r(T ∪ {c}) 最小者，平局取 id 最小者。

实现上维护每行（选民或选民组）已选名次中最小的 s 个，不足 s 个时用 m+1 补位：
加入名次 r 的候选人使该行分数减少 max(0, thr − r)，thr 是当前第 s 小名次。
"""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from election_core import (
    Committee,
    PreferenceProfile,
    SymmetricProfile,
    expected_excess,
    expected_smallest_sum,
    validate_sizes,
    weighted_total,
)
from election_core.constant import FLOAT_TIE_TOLERANCE
from utils.logger import setup_logger

from .trace import SelectionTrace

logger = setup_logger(__name__)

_INT64_SAFE = 2**62


class TopRanks:
    """每行已选名次中最小的 s 个（升序），缺位记为 m+1"""

    def __init__(self, rows: int, s: int, m: int):
        self.ranks = np.full((rows, s), m + 1, dtype=np.int64)

    @property
    def threshold(self) -> np.ndarray:
        return self.ranks[:, -1]

    def insert(self, column: np.ndarray) -> None:
        merged = np.concatenate([self.ranks, np.asarray(column, dtype=np.int64)[:, None]], axis=1)
        merged.sort(axis=1)
        self.ranks = merged[:, :-1]

    def row_sums(self) -> np.ndarray:
        return self.ranks.sum(axis=1)


def weight_vector(w_int: Sequence[int], bound: int) -> np.ndarray:
    """整数权重向量；乘积可能溢出 int64 时退回 Python 大整数（object 数组）"""
    if max(w_int) * bound * len(w_int) < _INT64_SAFE:
        return np.asarray(w_int, dtype=np.int64)
    return np.asarray([int(w) for w in w_int], dtype=object)


def _argmax_unchosen(gains: np.ndarray, chosen: np.ndarray, exact: bool) -> int:
    gains = gains.copy()
    gains[chosen] = -1
    if exact:
        return int(np.argmax(gains))
    best = float(gains.max())
    ties = np.flatnonzero(gains >= best - FLOAT_TIE_TOLERANCE * max(1.0, abs(best)))
    if len(ties) > 1 and gains[ties[0]] != gains[ties[-1]]:
        logger.warning(f"浮点模式下 {len(ties)} 个候选人在容差内并列，取 id 最小者 {ties[0]}")
    return int(ties[0])


def _greedy_explicit(profile: PreferenceProfile, k: int, s: int, exact: bool) -> tuple[Committee, SelectionTrace]:
    m = profile.m
    ranks = profile.rank_matrix
    w_int, _ = profile.integer_weights
    total = sum(w_int)
    weights = weight_vector(w_int, m + 1) if exact else np.asarray(w_int, dtype=np.float64) / total

    top = TopRanks(profile.n, s, m)
    chosen = np.zeros(m, dtype=bool)
    trace = SelectionTrace("greedy", k, s)
    score = Fraction(s * (m + 1))
    for step in range(k):
        gains = weights @ np.maximum(top.threshold[:, None] - ranks, 0)
        c = _argmax_unchosen(gains, chosen, exact)
        chosen[c] = True
        top.insert(ranks[:, c])
        new_score = Fraction(weighted_total(w_int, top.row_sums()), total)
        trace.record(c, new_score, score)
        logger.debug(f"greedy 第 {step + 1} 步选择候选人 {c}，分数 {float(new_score):.6f}")
        score = new_score
    return Committee.of(np.flatnonzero(chosen).tolist(), m), trace


def _slot_excess(intervals, thr: int) -> int:
    """Σ_{名次 r ∈ intervals, r < thr} (thr − r)"""
    total = 0
    for lo, hi in intervals:
        if lo >= thr:
            break
        hi = min(hi, thr - 1)
        count = hi - lo + 1
        total += count * thr - (lo + hi) * count // 2
    return total


class _SymmetricGreedy:
    """对称画像上的 Greedy：每块只评估一个代表（块内 id 最小的未入选成员）"""

    def __init__(self, sp: SymmetricProfile, k: int, s: int):
        self.sp = sp
        self.k = k
        self.s = s
        self.w_int, self.scale = sp.integer_weights
        self.weights = weight_vector(self.w_int, sp.m + 1)
        self.top = TopRanks(sp.group_count, s, sp.m)
        self.chosen_cols = np.zeros(len(sp.critical), dtype=bool)
        self.counts = [0] * len(sp.blocks)
        self.block_members = [sorted(b.members) for b in sp.blocks]

    def _open_blocks(self) -> list[int]:
        return [b for b, block in enumerate(self.sp.blocks) if self.counts[b] < block.size]

    def _fixed_gains(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """还没有选任何可交换候选人时，各行只有固定名次，可以整体向量化"""
        sp = self.sp
        thr = self.top.threshold
        crit: dict[int, Fraction] = {}
        diff = np.maximum(thr[:, None] - sp.placed, 0)
        if not self.chosen_cols.all():
            gains = self.weights @ diff
            masked = gains.copy()
            masked[self.chosen_cols] = -1
            best = masked.max()
            cols = np.flatnonzero(masked == best)
            col = min(cols.tolist(), key=lambda c: sp.critical[c])
            crit[col] = Fraction(int(best), self.scale)

        blocks: dict[int, Fraction] = {}
        thr_list = thr.tolist()
        for b in self._open_blocks():
            size = sp.blocks[b].size
            if sp.uses_default_block:
                row_sums = diff.sum(axis=1).tolist()
                excess = [t * (t - 1) // 2 - r for t, r in zip(thr_list, row_sums, strict=True)]
            else:
                excess = [_slot_excess(sp.block_intervals(g, b), t) for g, t in enumerate(thr_list)]
            blocks[b] = Fraction(weighted_total(self.w_int, excess), self.scale * size)
        return crit, blocks

    def _pooled_gains(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """已有可交换候选人入选：逐组用超几何核计算期望改进"""
        sp = self.sp
        open_blocks = self._open_blocks()
        crit: dict[int, Fraction] = {}
        blocks = {b: Fraction(0) for b in open_blocks}
        for g, weight in enumerate(sp.weights):
            fixed = self.top.ranks[g].tolist()
            thr = fixed[-1]
            cols = [c for c in range(len(sp.critical)) if not self.chosen_cols[c] and sp.placed[g, c] < thr]
            if cols:
                queries = [int(sp.placed[g, c]) for c in cols]
                excess = expected_excess(fixed, sp.group_pools(g, self.counts), self.s, queries)
                for c, value in zip(cols, excess, strict=True):
                    crit[c] = crit.get(c, Fraction(0)) + weight * value
            if not open_blocks:
                continue
            base = expected_smallest_sum(fixed, sp.group_pools(g, self.counts), self.s)
            for b in open_blocks:
                bumped = list(self.counts)
                bumped[b] += 1
                blocks[b] += weight * (base - expected_smallest_sum(fixed, sp.group_pools(g, bumped), self.s))
        for c in range(len(sp.critical)):
            if not self.chosen_cols[c]:
                crit.setdefault(c, Fraction(0))
        return crit, blocks

    def run(self) -> tuple[Committee, SelectionTrace]:
        sp = self.sp
        trace = SelectionTrace("greedy", self.k, self.s)
        score = Fraction(self.s * (sp.m + 1))
        members: list[int] = []
        for step in range(self.k):
            crit, blocks = self._pooled_gains() if any(self.counts) else self._fixed_gains()
            # (改进量, 候选人 id, 关键列下标, 块下标)
            options = [(gain, sp.critical[c], c, None) for c, gain in crit.items()]
            options += [(gain, self.block_members[b][self.counts[b]], None, b) for b, gain in blocks.items()]
            gain, candidate, col, b = max(options, key=lambda o: (o[0], -o[1]))
            if col is not None:
                self.chosen_cols[col] = True
                self.top.insert(sp.placed[:, col])
                block_name = None
            else:
                self.counts[b] += 1
                block_name = sp.blocks[b].name
            members.append(candidate)
            trace.record(candidate, score - gain, score, block_name)
            score -= gain
            logger.debug(f"greedy 第 {step + 1} 步选择 {block_name or '关键候选人'} {candidate}，分数 {float(score):.6f}")
        return Committee.of(members, sp.m), trace


def greedy(
    profile: PreferenceProfile | SymmetricProfile, k: int, s: int = 1, exact: bool = True
) -> tuple[Committee, SelectionTrace]:
    """
    Greedy 选委员会

    Args:
        profile: 显式或对称画像
        k: 委员会大小
        s: 每个选民计入的代表个数
        exact: False 时显式画像用 float64 比较（相对容差 1e-9）；对称画像始终精确

    Returns:
        (委员会, 选取记录)
    """
    validate_sizes(profile.m, k, s)
    logger.info(f"开始 greedy：m={profile.m}, k={k}, s={s}")
    if isinstance(profile, SymmetricProfile):
        committee, trace = _SymmetricGreedy(profile, k, s).run()
    else:
        committee, trace = _greedy_explicit(profile, k, s, exact)
    logger.info(f"greedy 完成，分数 {float(trace.scores[-1]):.6f}")
    return committee, trace
