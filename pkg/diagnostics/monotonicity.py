"""委员会单调性：规则的 k 链检查、反例搜索，以及单调规则下界的闭式计算"""

from collections.abc import Iterable
from fractions import Fraction

from election_core import (
    Committee,
    InvalidArgumentError,
    PreferenceProfile,
    SymmetricProfile,
    expected_score_symmetric,
)
from instance_gen.random_gen import gen_random
from utils.logger import setup_logger

from .report import RuleOptions, run_rule

logger = setup_logger(__name__)

Profile = PreferenceProfile | SymmetricProfile


def check_monotone_chain(
    rule: str, profile: Profile, k_max: int, s: int = 1, options: RuleOptions | None = None
) -> tuple[bool, int | None]:
    """
    对 k = s..k_max 依次运行规则，检查每个委员会是否包含上一个

    Returns:
        (是否单调, 第一个违反单调性的 k)
    """
    if not s <= k_max <= profile.m:
        raise InvalidArgumentError(f"需要 s ≤ k_max ≤ m，实际 s={s}, k_max={k_max}, m={profile.m}")
    previous: Committee | None = None
    for k in range(s, k_max + 1):
        committee = run_rule(rule, profile, k, s, options).committee
        if previous is not None and not set(previous.members) <= set(committee.members):
            logger.info(f"{rule} 在 k={k} 处不单调：{previous.members} ⊄ {committee.members}")
            return False, k
        previous = committee
    return True, None


def search_monotonicity_witness(
    rule: str,
    candidates: Iterable[Profile] | None = None,
    k_max: int = 3,
    s: int = 1,
    seeds: Iterable[int] | None = None,
    m: int = 6,
    n: int = 5,
) -> tuple[Profile, int] | None:
    """
    有界搜索单调性反例：先试给定的实例族，再试随机小实例

    Returns:
        (实例, 违反的 k)；没找到返回 None（不代表规则单调）
    """
    for profile in candidates or ():
        ok, k = check_monotone_chain(rule, profile, min(k_max, profile.m), s)
        if not ok:
            return profile, k
    for seed in seeds if seeds is not None else range(200):
        profile = gen_random(m, n, seed=seed)
        ok, k = check_monotone_chain(rule, profile, min(k_max, m), s)
        if not ok:
            logger.info(f"随机实例 seed={seed} 上找到 {rule} 的单调性反例，k={k}")
            return profile, k
    logger.info(f"{rule} 在搜索范围内未找到单调性反例")
    return None


def _check_ab(a: float, b: float) -> None:
    if not 0 < a < b < 1:
        raise InvalidArgumentError(f"需要 0 < a < b < 1，实际 a={a}, b={b}")


def monotonicity_branches(a: float, b: float) -> dict[str, float]:
    """
    连续极限下三种候选委员会（按 m+1 归一化）乘以对应 Rand 倍数后的值：
    2·r(Y)、3·r(XX)、3·r(XY)
    """
    _check_ab(a, b)
    y_mass = 1 - (b - a)
    r_y = (a / 2) * a / y_mass + ((1 + b) / 2) * (1 - b) / y_mass
    r_xx = (2 * a + b) / 3
    r_xy = (a / 2) * a / y_mass + ((a + b) / 2) * (1 - b) / y_mass
    return {"Y": 2 * r_y, "XX": 3 * r_xx, "XY": 3 * r_xy}


def eval_monotonicity_bound(a: float, b: float) -> tuple[float, str]:
    """
    任何满足委员会单调性的规则在该实例族上，k=1 或 k=2 时至少有一个达到 bound·Rand

    Returns:
        (三个分支的最小值, 取到最小值的分支名)
    """
    branches = monotonicity_branches(a, b)
    branch = min(branches, key=branches.__getitem__)
    return branches[branch], branch


def monotone_gap_scores(sp: SymmetricProfile) -> dict[str, Fraction]:
    """在生成的 X/Y 实例上精确计算 r(X)、r(Y)、r(XX)、r(XY)、r(YY)"""
    names = {b.name for b in sp.blocks}
    if names != {"X", "Y"}:
        raise InvalidArgumentError(f"需要含 X/Y 两个可交换块的实例，实际 {sorted(names)}")
    combos = {"X": (1, 0), "Y": (0, 1), "XX": (2, 0), "XY": (1, 1), "YY": (0, 2)}
    return {label: expected_score_symmetric(sp, (), {"X": x, "Y": y}, 1) for label, (x, y) in combos.items()}
