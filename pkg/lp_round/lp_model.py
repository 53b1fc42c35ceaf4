"""
s-Borda 的线性规划松弛

显式画像：每个选民复制 s 份，变量 y_j（候选人入选量）与 x_{i,j,ℓ}（第 ℓ 份分给 j 的量），
    Σ_j y_j = k,  Σ_ℓ x_{ijℓ} ≤ y_j,  Σ_j x_{ijℓ} ≥ 1,  0 ≤ · ≤ 1，
    目标 Σ_i w_i Σ_{j,ℓ} r_i(j)·x_{ijℓ}。
对称画像：对可交换成员做置换平均后，每个关键候选人一个 y、每块一个共享的 η，
每组每个名次一个合并了副本的 x_{g,r}（x ≤ y ≤ 1 保证合并等价）。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from scipy import sparse

from election_core import InvalidArgumentError, PreferenceProfile, SymmetricProfile, validate_sizes
from utils.file_utils import write_text_atomic
from utils.logger import setup_logger

logger = setup_logger(__name__)

# 对称松弛的 x 变量个数上限（组数 × m）
SYMMETRIC_LP_MAX_CELLS = 2_000_000


@dataclass
class LpModel:
    kind: str
    m: int
    k: int
    s: int
    c: np.ndarray
    a_ub: sparse.csr_matrix
    b_ub: np.ndarray
    a_eq: sparse.csr_matrix
    b_eq: np.ndarray
    names: list[str]
    # candidate_vars[j] 是承载候选人 j 入选量的变量下标
    candidate_vars: np.ndarray
    # 目标值除以 scale 得到与 s-Borda 分数同口径的值
    scale: float = 1.0
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def variable_count(self) -> int:
        return len(self.c)

    def candidate_mass(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=np.float64)[self.candidate_vars]

    def constraint_violation(self, x: np.ndarray) -> float:
        """x 对全部约束（含 [0,1] 边界）的最大违反量"""
        x = np.asarray(x, dtype=np.float64)
        worst = max(0.0, float(-x.min(initial=0.0)), float(x.max(initial=0.0) - 1.0))
        if self.a_ub.shape[0]:
            worst = max(worst, float((self.a_ub @ x - self.b_ub).max()))
        if self.a_eq.shape[0]:
            worst = max(worst, float(np.abs(self.a_eq @ x - self.b_eq).max()))
        return worst

    def to_lp_text(self) -> str:
        """导出为 CPLEX LP 文本格式，供外部求解器交叉核对"""
        lines = [f"\\ s-Borda relaxation kind={self.kind} m={self.m} k={self.k} s={self.s}", "Minimize"]
        lines.append(" obj: " + _linear_expr(self.c, np.arange(len(self.c)), self.names))
        lines.append("Subject To")
        for prefix, matrix, rhs, sense in (("eq", self.a_eq, self.b_eq, "="), ("ub", self.a_ub, self.b_ub, "<=")):
            for i in range(matrix.shape[0]):
                row = matrix.getrow(i)
                lines.append(f" {prefix}{i}: {_linear_expr(row.data, row.indices, self.names)} {sense} {rhs[i]:g}")
        lines.append("Bounds")
        lines.extend(f" 0 <= {name} <= 1" for name in self.names)
        lines.append("End")
        return "\n".join(lines) + "\n"

    def export(self, file_path: str) -> None:
        write_text_atomic(file_path, self.to_lp_text())
        logger.info(f"LP 模型已导出: {file_path}（{self.variable_count} 个变量）")


def _linear_expr(coefficients, indices, names: list[str]) -> str:
    terms = []
    for coef, idx in zip(coefficients, indices, strict=True):
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        terms.append(f"{sign} {abs(coef):g} {names[idx]}")
    if not terms:
        return "0 " + names[0]
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def _float_weights(weights: tuple[Fraction, ...]) -> np.ndarray:
    return np.asarray([float(w) for w in weights], dtype=np.float64)


def _build_explicit(profile: PreferenceProfile, k: int, s: int) -> LpModel:
    n, m = profile.n, profile.m
    ranks = profile.rank_matrix
    weights = _float_weights(profile.weights)
    num_x = n * m * s
    total = m + num_x

    def x_index(i, j, copy):
        return m + (i * m + j) * s + copy

    # 目标：x_{ijℓ} 的系数是 w_i·r_i(j)
    c = np.zeros(total)
    c[m:] = np.repeat((weights[:, None] * ranks).ravel(), s)

    i_grid, j_grid, l_grid = np.meshgrid(np.arange(n), np.arange(m), np.arange(s), indexing="ij")
    x_cols = x_index(i_grid, j_grid, l_grid)

    # Σ_ℓ x_{ijℓ} − y_j ≤ 0，每个 (i, j) 一行
    cap_rows = (i_grid * m + j_grid).ravel()
    cap_cols = x_cols.ravel()
    y_rows = np.arange(n * m)
    y_cols = np.tile(np.arange(m), n)
    rows = np.concatenate([cap_rows, y_rows])
    cols = np.concatenate([cap_cols, y_cols])
    vals = np.concatenate([np.ones(len(cap_rows)), -np.ones(len(y_rows))])

    # −Σ_j x_{ijℓ} ≤ −1，每个 (i, ℓ) 一行
    demand_rows = n * m + (i_grid * s + l_grid).ravel()
    rows = np.concatenate([rows, demand_rows])
    cols = np.concatenate([cols, x_cols.ravel()])
    vals = np.concatenate([vals, -np.ones(len(demand_rows))])
    a_ub = sparse.csr_matrix((vals, (rows, cols)), shape=(n * m + n * s, total))
    b_ub = np.concatenate([np.zeros(n * m), -np.ones(n * s)])

    a_eq = sparse.csr_matrix((np.ones(m), (np.zeros(m, dtype=np.int64), np.arange(m))), shape=(1, total))
    names = [f"y_{j}" for j in range(m)]
    names += [f"x_{i}_{j}_{copy + 1}" for i in range(n) for j in range(m) for copy in range(s)]
    return LpModel(
        kind="explicit",
        m=m,
        k=k,
        s=s,
        c=c,
        a_ub=a_ub,
        b_ub=b_ub,
        a_eq=a_eq,
        b_eq=np.array([float(k)]),
        names=names,
        candidate_vars=np.arange(m),
        scale=float(profile.total_weight),
        metadata={"voters": n},
    )


def _build_symmetric(sp: SymmetricProfile, k: int, s: int) -> LpModel:
    m, groups = sp.m, sp.group_count
    if groups * m > SYMMETRIC_LP_MAX_CELLS:
        raise InvalidArgumentError(f"对称松弛需要 {groups * m} 个分配变量，超过上限 {SYMMETRIC_LP_MAX_CELLS}")
    num_crit, num_blocks = len(sp.critical), len(sp.blocks)
    mass_vars = num_crit + num_blocks
    total = mass_vars + groups * m
    weights = _float_weights(sp.weights)

    # occupant[g, r-1] = 第 g 组名次 r 上的入选量变量
    occupant = np.empty((groups, m), dtype=np.int64)
    for g in range(groups):
        for b in range(num_blocks):
            for lo, hi in sp.block_intervals(g, b):
                occupant[g, lo - 1 : hi] = num_crit + b
        occupant[g, sp.placed[g] - 1] = np.arange(num_crit)

    c = np.zeros(total)
    c[mass_vars:] = (weights[:, None] * np.arange(1, m + 1)[None, :]).ravel()

    x_cols = mass_vars + np.arange(groups * m)
    # x_{g,r} − (占位者的入选量) ≤ 0
    rows = np.concatenate([np.arange(groups * m), np.arange(groups * m)])
    cols = np.concatenate([x_cols, occupant.ravel()])
    vals = np.concatenate([np.ones(groups * m), -np.ones(groups * m)])
    # −Σ_r x_{g,r} ≤ −s
    rows = np.concatenate([rows, groups * m + np.repeat(np.arange(groups), m)])
    cols = np.concatenate([cols, x_cols])
    vals = np.concatenate([vals, -np.ones(groups * m)])
    a_ub = sparse.csr_matrix((vals, (rows, cols)), shape=(groups * m + groups, total))
    b_ub = np.concatenate([np.zeros(groups * m), -float(s) * np.ones(groups)])

    # Σ_c y_c + Σ_b |块 b|·η_b = k
    eq_coef = np.array([1.0] * num_crit + [float(b.size) for b in sp.blocks])
    a_eq = sparse.csr_matrix((eq_coef, (np.zeros(mass_vars, dtype=np.int64), np.arange(mass_vars))), shape=(1, total))

    candidate_vars = np.empty(m, dtype=np.int64)
    candidate_vars[list(sp.critical)] = np.arange(num_crit)
    for b, block in enumerate(sp.blocks):
        candidate_vars[list(block.members)] = num_crit + b
    names = [f"y_{c}" for c in sp.critical] + [f"eta_{block.name}" for block in sp.blocks]
    names += [f"x_{g}_{r}" for g in range(groups) for r in range(1, m + 1)]
    return LpModel(
        kind="symmetric",
        m=m,
        k=k,
        s=s,
        c=c,
        a_ub=a_ub,
        b_ub=b_ub,
        a_eq=a_eq,
        b_eq=np.array([float(k)]),
        names=names,
        candidate_vars=candidate_vars,
        scale=1.0,
        metadata={"groups": groups, "blocks": [b.name for b in sp.blocks]},
    )


def build_lp(profile: PreferenceProfile | SymmetricProfile, k: int, s: int = 1) -> LpModel:
    """
    构造 s-Borda 的线性规划松弛

    Args:
        profile: 显式或对称画像
        k: 委员会大小
        s: 每个选民计入的代表个数

    Returns:
        LpModel（约束矩阵为 scipy 稀疏矩阵）
    """
    validate_sizes(profile.m, k, s)
    if isinstance(profile, SymmetricProfile):
        model = _build_symmetric(profile, k, s)
    else:
        model = _build_explicit(profile, k, s)
    logger.info(
        f"构造 LP（{model.kind}）：{model.variable_count} 个变量，"
        f"{model.a_ub.shape[0] + model.a_eq.shape[0]} 条约束"
    )
    return model
