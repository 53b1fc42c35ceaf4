"""选票画像（显式 / 对称）与委员会数据模型"""

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

import numpy as np

from utils.math_utils import as_fraction, scale_to_integers

from .constant import DEFAULT_DUMMY_BLOCK, MATERIALIZE_MAX_DUMMIES
from .exceptions import InvalidArgumentError

Interval = tuple[int, int]


@dataclass(frozen=True)
class Ranking:
    """单个选民的全序：order[0] 是最偏好的候选人（名次 1）"""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise InvalidArgumentError(f"排名不是 0..{len(order) - 1} 的排列: {order}")

    @property
    def m(self) -> int:
        return len(self.order)

    @cached_property
    def rank_of(self) -> dict[int, int]:
        return {c: i + 1 for i, c in enumerate(self.order)}

    def rank(self, candidate: int) -> int:
        return self.rank_of[candidate]

    @property
    def top(self) -> int:
        return self.order[0]

    @property
    def bottom(self) -> int:
        return self.order[-1]


@dataclass(frozen=True)
class Committee:
    """委员会：排好序、互不相同的候选人 id"""

    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(int(c) for c in self.members))
        if len(set(members)) != len(members):
            raise InvalidArgumentError(f"委员会包含重复候选人: {members}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, ids: Iterable[int], m: int) -> "Committee":
        committee = cls(tuple(ids))
        committee.validate(m)
        return committee

    @property
    def k(self) -> int:
        return len(self.members)

    def validate(self, m: int) -> None:
        if self.k == 0:
            raise InvalidArgumentError("委员会不能为空")
        if self.k > m:
            raise InvalidArgumentError(f"委员会大小 {self.k} 超过候选人数 {m}")
        if self.members[0] < 0 or self.members[-1] >= m:
            raise InvalidArgumentError(f"候选人 id 超出范围 0..{m - 1}: {self.members}")

    def __contains__(self, candidate: object) -> bool:
        return candidate in set(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.k


@dataclass(frozen=True, eq=False)
class PreferenceProfile:
    """显式选票画像：n 个选民的全序，可带正权重（等价于复制选民）"""

    m: int
    voters: tuple[Ranking, ...]
    weights: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise InvalidArgumentError("候选人数 m 必须 ≥ 1")
        if not self.voters:
            raise InvalidArgumentError("至少需要一个选民")
        for v in self.voters:
            if v.m != self.m:
                raise InvalidArgumentError(f"选民排名长度 {v.m} 与 m={self.m} 不一致")
        weights = tuple(as_fraction(w) for w in self.weights) or (Fraction(1),) * len(self.voters)
        if len(weights) != len(self.voters):
            raise InvalidArgumentError("权重个数与选民个数不一致")
        if any(w <= 0 for w in weights):
            raise InvalidArgumentError("选民权重必须为正")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_orders(
        cls, m: int, orders: Iterable[Sequence[int]], weights: Iterable[Any] | None = None
    ) -> "PreferenceProfile":
        voters = tuple(Ranking(tuple(o)) for o in orders)
        return cls(m, voters, tuple(weights) if weights is not None else ())

    @property
    def n(self) -> int:
        """选票条数（不计权重）"""
        return len(self.voters)

    @cached_property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @cached_property
    def rank_matrix(self) -> np.ndarray:
        """(n, m) 的名次矩阵，rank_matrix[v, c] = r_v(c)"""
        orders = np.array([v.order for v in self.voters], dtype=np.int64)
        ranks = np.empty_like(orders)
        rows = np.arange(self.n)[:, None]
        ranks[rows, orders] = np.arange(1, self.m + 1, dtype=np.int64)[None, :]
        ranks.setflags(write=False)
        return ranks

    @cached_property
    def integer_weights(self) -> tuple[list[int], int]:
        """(整数权重, 放大倍数)；所有精确计分都在整数上进行"""
        return scale_to_integers(self.weights)

    @property
    def orders(self) -> list[tuple[int, ...]]:
        return [v.order for v in self.voters]

    def has_unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceProfile):
            return NotImplemented
        return self.m == other.m and self.orders == other.orders and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.m, tuple(self.orders), self.weights))


@dataclass(frozen=True)
class DummyBlock:
    """一组可交换的非关键候选人，在每个选民组内均匀排列到本块的空位上"""

    name: str
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class RankPool:
    """抽样池：不相交、升序的闭区间名次集合，从中无放回抽取 draws 个"""

    intervals: Iterable[Interval]
    size: int
    draws: int


def complement_intervals(sorted_ranks: Sequence[int], m: int) -> Iterator[Interval]:
    """1..m 中去掉 sorted_ranks 后剩余的连续区间（惰性生成）"""
    start = 1
    for r in sorted_ranks:
        r = int(r)
        if r > m:
            break
        if r > start:
            yield (start, r - 1)
        start = r + 1
    if start <= m:
        yield (start, m)


def ranks_to_intervals(ranks: Iterable[int]) -> list[Interval]:
    """把名次集合压缩为升序闭区间列表"""
    out: list[list[int]] = []
    for r in sorted(int(x) for x in ranks):
        if out and r == out[-1][1] + 1:
            out[-1][1] = r
        else:
            out.append([r, r])
    return [(lo, hi) for lo, hi in out]


def interval_size(intervals: Iterable[Interval]) -> int:
    return sum(hi - lo + 1 for lo, hi in intervals)


@dataclass(frozen=True, eq=False)
class SymmetricProfile:
    """
    对称选票画像

    每个选民组给所有关键候选人固定名次；其余候选人分属若干可交换块，
    组内以全部排列的方式均匀填入本块的空位。groups 的权重和为 1。

    placed[g, i] 是第 g 组中 critical[i] 的名次。slots 为 None 时只有一个
    默认块，其空位就是未被关键候选人占用的名次。
    """

    m: int
    critical: tuple[int, ...]
    weights: tuple[Fraction, ...]
    placed: np.ndarray
    blocks: tuple[DummyBlock, ...] = ()
    slots: tuple[tuple[tuple[Interval, ...], ...], ...] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise InvalidArgumentError("候选人数 m 必须 ≥ 1")
        critical = tuple(int(c) for c in self.critical)
        if len(set(critical)) != len(critical) or any(c < 0 or c >= self.m for c in critical):
            raise InvalidArgumentError(f"关键候选人 id 非法: {critical}")
        object.__setattr__(self, "critical", critical)

        weights = tuple(as_fraction(w) for w in self.weights)
        if not weights:
            raise InvalidArgumentError("至少需要一个选民组")
        if any(w <= 0 for w in weights):
            raise InvalidArgumentError("选民组权重必须为正")
        if sum(weights, Fraction(0)) != 1:
            raise InvalidArgumentError(f"选民组权重之和必须为 1，实际为 {sum(weights, Fraction(0))}")
        object.__setattr__(self, "weights", weights)

        placed = np.asarray(self.placed, dtype=np.int64).reshape(len(weights), len(critical))
        if placed.size:
            if placed.min() < 1 or placed.max() > self.m:
                raise InvalidArgumentError("关键候选人名次必须在 1..m 内")
            ordered = np.sort(placed, axis=1)
            if np.any(np.diff(ordered, axis=1) == 0):
                raise InvalidArgumentError("同一组内关键候选人名次必须互不相同")
        placed.setflags(write=False)
        object.__setattr__(self, "placed", placed)

        others = sorted(set(range(self.m)) - set(critical))
        if not self.blocks:
            object.__setattr__(self, "blocks", (DummyBlock(DEFAULT_DUMMY_BLOCK, tuple(others)),))
        members = sorted(c for b in self.blocks for c in b.members)
        if members != others:
            raise InvalidArgumentError("可交换块必须恰好划分所有非关键候选人")
        if self.slots is None:
            if len(self.blocks) != 1:
                raise InvalidArgumentError("多个可交换块时必须给出每组的空位区间")
        else:
            self._validate_slots()

    def _validate_slots(self) -> None:
        if len(self.slots) != self.group_count:
            raise InvalidArgumentError("slots 的组数与 weights 不一致")
        for g, per_block in enumerate(self.slots):
            if len(per_block) != len(self.blocks):
                raise InvalidArgumentError(f"第 {g} 组的空位块数与可交换块数不一致")
            taken = set(int(r) for r in self.placed[g])
            for block, intervals in zip(self.blocks, per_block, strict=True):
                if interval_size(intervals) != block.size:
                    raise InvalidArgumentError(f"第 {g} 组块 {block.name} 的空位数与成员数不一致")
                for lo, hi in intervals:
                    span = set(range(lo, hi + 1))
                    if span & taken:
                        raise InvalidArgumentError(f"第 {g} 组空位区间重叠: [{lo}, {hi}]")
                    taken |= span
            if taken != set(range(1, self.m + 1)):
                raise InvalidArgumentError(f"第 {g} 组名次没有被完整覆盖")

    @classmethod
    def from_groups(
        cls,
        m: int,
        critical: Sequence[int],
        groups: Sequence[tuple[Any, Mapping[int, int]]],
        blocks: Sequence[DummyBlock] = (),
        slots: Sequence[Sequence[Sequence[Interval]]] | None = None,
        metadata: Mapping[str, Any] | None = None,
    ) -> "SymmetricProfile":
        """由 [(权重, {关键候选人: 名次})] 构造"""
        critical = tuple(critical)
        placed = np.zeros((len(groups), len(critical)), dtype=np.int64)
        for g, (_, mapping) in enumerate(groups):
            if set(mapping) != set(critical):
                raise InvalidArgumentError(f"第 {g} 组必须且只能放置全部关键候选人")
            placed[g] = [mapping[c] for c in critical]
        frozen_slots = None
        if slots is not None:
            frozen_slots = tuple(tuple(tuple((int(lo), int(hi)) for lo, hi in iv) for iv in per) for per in slots)
        return cls(
            m=m,
            critical=critical,
            weights=tuple(w for w, _ in groups),
            placed=placed,
            blocks=tuple(blocks),
            slots=frozen_slots,
            metadata=dict(metadata or {}),
        )

    @property
    def group_count(self) -> int:
        return len(self.weights)

    @cached_property
    def critical_index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.critical)}

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {c: b for b, block in enumerate(self.blocks) for c in block.members}

    @cached_property
    def sorted_placed(self) -> np.ndarray:
        return np.sort(self.placed, axis=1)

    @cached_property
    def integer_weights(self) -> tuple[list[int], int]:
        return scale_to_integers(self.weights)

    @property
    def uses_default_block(self) -> bool:
        return self.slots is None

    def placed_map(self, g: int) -> dict[int, int]:
        return {c: int(r) for c, r in zip(self.critical, self.placed[g], strict=True)}

    def block_intervals(self, g: int, b: int) -> Iterable[Interval]:
        if self.slots is None:
            return complement_intervals(self.sorted_placed[g], self.m)
        return self.slots[g][b]

    def group_pools(self, g: int, counts: Sequence[int]) -> list[RankPool]:
        """第 g 组中各块（抽取数 > 0）的抽样池"""
        return [
            RankPool(self.block_intervals(g, b), block.size, counts[b])
            for b, block in enumerate(self.blocks)
            if counts[b] > 0
        ]

    def dummy_counts(self, dummy_count: int | Mapping[str, int]) -> list[int]:
        """把 int（单块）或 {块名: 个数} 规范化为按块顺序的列表"""
        if isinstance(dummy_count, Mapping):
            names = {b.name: i for i, b in enumerate(self.blocks)}
            unknown = set(dummy_count) - set(names)
            if unknown:
                raise InvalidArgumentError(f"未知的可交换块: {sorted(unknown)}")
            counts = [0] * len(self.blocks)
            for name, count in dummy_count.items():
                counts[names[name]] = int(count)
        else:
            if len(self.blocks) != 1:
                raise InvalidArgumentError("存在多个可交换块时 dummy_count 必须按块给出")
            counts = [int(dummy_count)]
        for count, block in zip(counts, self.blocks, strict=True):
            if count < 0 or count > block.size:
                raise InvalidArgumentError(f"块 {block.name} 的抽取数 {count} 超出 0..{block.size}")
        return counts

    def classify(self, committee: Committee) -> tuple[list[int], list[int]]:
        """委员会 → (入选关键候选人, 每块入选个数)"""
        committee.validate(self.m)
        chosen = [c for c in committee.members if c in self.critical_index]
        counts = [0] * len(self.blocks)
        for c in committee.members:
            if c not in self.critical_index:
                counts[self.block_of[c]] += 1
        return chosen, counts

    def representative_committee(self, chosen_critical: Iterable[int], counts: Sequence[int]) -> Committee:
        """给定关键候选人与每块个数，取每块 id 最小的成员组成具体委员会"""
        members = list(chosen_critical)
        for block, count in zip(self.blocks, counts, strict=True):
            members.extend(sorted(block.members)[:count])
        return Committee.of(members, self.m)

    def group_slot_ranks(self, g: int, b: int) -> list[int]:
        return [r for lo, hi in self.block_intervals(g, b) for r in range(lo, hi + 1)]

    def materialize(self) -> PreferenceProfile:
        """展开为显式画像（每组枚举全部排列，权重均分）；仅用于小规模校验"""
        exchangeable = sum(b.size for b in self.blocks)
        if exchangeable > MATERIALIZE_MAX_DUMMIES:
            raise InvalidArgumentError(f"可交换候选人 {exchangeable} 个，超过物化上限 {MATERIALIZE_MAX_DUMMIES}")
        orders: list[list[int]] = []
        weights: list[Fraction] = []
        for g in range(self.group_count):
            per_block_perms = []
            for b, block in enumerate(self.blocks):
                slots = self.group_slot_ranks(g, b)
                per_block_perms.append([(slots, perm) for perm in itertools.permutations(block.members)])
            combos = list(itertools.product(*per_block_perms))
            share = self.weights[g] / len(combos)
            for combo in combos:
                rank_of = self.placed_map(g)
                for slots, perm in combo:
                    rank_of.update(zip(perm, slots, strict=True))
                orders.append(sorted(rank_of, key=lambda c: rank_of[c]))
                weights.append(share)
        return PreferenceProfile.from_orders(self.m, orders, weights)

    def class_count(self, k: int) -> int:
        """大小为 k 的委员会按（关键候选人子集, 每块个数）划分后的等价类个数"""
        sizes = [b.size for b in self.blocks]
        total = 0
        for j in range(min(k, len(self.critical)) + 1):
            total += math.comb(len(self.critical), j) * _bounded_compositions(k - j, sizes)
        return total


def _bounded_compositions(total: int, caps: Sequence[int]) -> int:
    """把 total 拆成 len(caps) 个非负整数且各不超过 caps 的方案数"""
    ways = [1] + [0] * total
    for cap in caps:
        nxt = [0] * (total + 1)
        for t in range(total + 1):
            if ways[t]:
                for x in range(min(cap, total - t) + 1):
                    nxt[t + x] += ways[t]
        ways = nxt
    return ways[total]


def block_count_vectors(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """枚举和为 total、各分量不超过 caps 的非负整数向量（字典序）"""
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(caps[0], total) + 1):
        for rest in block_count_vectors(total - first, caps[1:]):
            yield (first, *rest)
