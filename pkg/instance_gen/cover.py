"""由正则最大 k 覆盖实例构造选举实例（困难性归约的生成器版本）"""

import itertools
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from election_core import BudgetExceededError, InvalidArgumentError, PreferenceProfile, ProfileParseError
from utils.logger import setup_logger
from utils.math_utils import as_fraction

logger = setup_logger(__name__)

# 每个元素最多物化的选民副本数；其余倍数折算到权重里
DEFAULT_COPIES_CAP = 16
# 默认物化预算：选民条数 × m
DEFAULT_COVER_BUDGET = 5_000_000


class CoverInstance(BaseModel):
    """正则最大 k 覆盖：全集 {0..n_u−1}，每个集合大小都是 n_u/k_c"""

    n_u: int = Field(ge=1, description="全集大小")
    k_c: int = Field(ge=1, description="覆盖预算（可选集合数）")
    sets: list[list[int]] = Field(min_length=1, description="集合族，每个集合是元素 id 列表")

    @model_validator(mode="after")
    def check_regular(self) -> "CoverInstance":
        if self.n_u % self.k_c != 0:
            raise ValueError(f"k_c={self.k_c} 必须整除 n_u={self.n_u}")
        size = self.n_u // self.k_c
        for i, members in enumerate(self.sets):
            if len(set(members)) != len(members):
                raise ValueError(f"集合 {i} 含重复元素")
            if len(members) != size:
                raise ValueError(f"集合 {i} 大小为 {len(members)}，正则实例要求 {size}")
            if any(e < 0 or e >= self.n_u for e in members):
                raise ValueError(f"集合 {i} 的元素超出 0..{self.n_u - 1}")
        if self.k_c > len(self.sets):
            raise ValueError(f"覆盖预算 k_c={self.k_c} 超过集合个数 {len(self.sets)}")
        return self

    @property
    def z(self) -> int:
        return len(self.sets)

    def coverage(self, chosen: tuple[int, ...] | list[int]) -> int:
        covered: set[int] = set()
        for i in chosen:
            covered.update(self.sets[i])
        return len(covered)

    def best_coverage(self) -> tuple[int, tuple[int, ...]]:
        """穷举 k_c 个集合的最大覆盖（仅用于小实例）"""
        best, best_sets = -1, ()
        for chosen in itertools.combinations(range(self.z), self.k_c):
            value = self.coverage(chosen)
            if value > best:
                best, best_sets = value, chosen
        return best, best_sets

    def sets_containing(self, element: int) -> list[int]:
        return [i for i, members in enumerate(self.sets) if element in members]


def parse_cover(text: str) -> CoverInstance:
    """
    解析覆盖实例文本：首行 `n_u z k_c`，随后 z 行，每行一个集合的元素 id

    空行与 # 开头的行被忽略。
    """
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ProfileParseError("覆盖实例文件为空")
    head_no, head = lines[0]
    try:
        n_u, z, k_c = (int(x) for x in head.split())
    except ValueError as e:
        raise ProfileParseError(f"首行必须是三个整数 `n_u z k_c`: {head!r}", head_no) from e
    body = lines[1:]
    if len(body) != z:
        raise ProfileParseError(f"声明了 {z} 个集合，实际 {len(body)} 行", head_no)

    sets: list[list[int]] = []
    for no, line in body:
        try:
            sets.append([int(x) for x in line.split()])
        except ValueError as e:
            raise ProfileParseError(f"集合行包含非整数: {line!r}", no) from e
    try:
        return CoverInstance(n_u=n_u, k_c=k_c, sets=sets)
    except ValidationError as e:
        raise ProfileParseError(f"覆盖实例校验失败: {e.errors()[0]['msg']}") from e


def load_cover(path: Path) -> CoverInstance:
    return parse_cover(Path(path).read_text(encoding="utf-8"))


def format_cover(cover: CoverInstance) -> str:
    lines = [f"{cover.n_u} {cover.z} {cover.k_c}"]
    lines.extend(" ".join(str(e) for e in members) for members in cover.sets)
    return "\n".join(lines) + "\n"


def cover_dimensions(cover: CoverInstance, epsilon: float) -> tuple[int, int]:
    """
    归约规模：m = ⌈2·k·z/ε′⌉（ε′ = 10ε）与权重倍数 R = ⌈10·m·k²/(n_u·ε²)⌉

    Returns:
        (m, R)
    """
    if not 0 < epsilon <= 0.1:
        raise InvalidArgumentError(f"ε 必须在 (0, 0.1] 内，实际 {epsilon}")
    eps = as_fraction(epsilon)
    m = math.ceil(2 * cover.k_c * cover.z / (10 * eps))
    copies = math.ceil(10 * m * cover.k_c**2 / (cover.n_u * eps**2))
    return m, copies


def gen_from_cover(
    cover: CoverInstance,
    epsilon: float,
    seed: int | None = None,
    copies_cap: int = DEFAULT_COPIES_CAP,
    budget: int = DEFAULT_COVER_BUDGET,
) -> PreferenceProfile:
    """
    每个元素对应一组选民，每个集合对应一个关键候选人（id = 集合下标）

    覆盖该元素的关键候选人按集合顺序排在最前面（落在前 ε′ 部分），
    其余关键候选人按 id 顺序垫底，可交换候选人在中间随机排列。
    R 个副本中只物化 min(R, copies_cap) 个，每个副本的可交换候选人各自重新打乱，
    剩余倍数折算为权重 R/副本数。

    Args:
        cover: 正则覆盖实例
        epsilon: ε ∈ (0, 0.1]
        seed: 随机种子
        copies_cap: 每个元素物化的副本上限
        budget: 物化预算（选民条数 × m）

    Returns:
        PreferenceProfile，每条选票权重为 R/副本数
    """
    m, copies_total = cover_dimensions(cover, epsilon)
    if copies_cap < 1:
        raise InvalidArgumentError("copies_cap 必须 ≥ 1")
    copies = min(copies_total, copies_cap)
    required = cover.n_u * copies * m
    if required > budget:
        raise BudgetExceededError(required, budget)

    z = cover.z
    dummies = np.arange(z, m, dtype=np.int64)
    rng = np.random.default_rng(seed)
    orders: list[list[int]] = []
    for element in range(cover.n_u):
        top = cover.sets_containing(element)
        covering = set(top)
        bottom = [i for i in range(z) if i not in covering]
        for _ in range(copies):
            orders.append(top + rng.permutation(dummies).tolist() + bottom)
    weight = Fraction(copies_total, copies)
    logger.info(
        f"覆盖归约：n_u={cover.n_u}, z={z}, k={cover.k_c}, ε={epsilon} → m={m}, "
        f"R={copies_total}（物化 {copies} 份）"
    )
    return PreferenceProfile.from_orders(m, orders, [weight] * len(orders))
