from dataclasses import dataclass
from typing import Any

import numpy as np

from election_core import InvalidArgumentError, PreferenceProfile, SolverError, SymmetricProfile
from election_core.constant import LP_FEASIBILITY_TOL
from utils.logger import setup_logger

from .lp_model import LpModel
from .solvers import LpSolver, get_solver

logger = setup_logger(__name__)


@dataclass(frozen=True)
class FractionalSolution:
    """松弛的最优解：每个候选人的入选量 y 与归一化目标值"""

    y: np.ndarray
    objective: float
    raw_objective: float = 0.0
    solver: str = ""
    iterations: int = 0

    @property
    def total_mass(self) -> float:
        return float(self.y.sum())

    def to_dict(self) -> dict[str, Any]:
        return {"y": [float(v) for v in self.y], "objective": self.objective}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FractionalSolution":
        y = np.asarray(data["y"], dtype=np.float64)
        return cls(y=y, objective=float(data["objective"]))


def solve_lp(model: LpModel, solver: str | LpSolver | None = "auto") -> FractionalSolution:
    """
    求解松弛并检查可行性

    Args:
        model: build_lp 构造的模型
        solver: 求解器名称或实例

    Returns:
        FractionalSolution（objective 已除以 model.scale）
    """
    engine = get_solver(solver, model.variable_count)
    logger.info(f"开始求解 LP：{model.variable_count} 个变量，求解器 {engine.name}")
    result = engine.solve(model)
    violation = model.constraint_violation(result.x)
    if violation > LP_FEASIBILITY_TOL * max(1.0, float(model.k)):
        raise SolverError(f"求解器 {engine.name} 返回的解违反约束 {violation:.3e}")
    y = model.candidate_mass(result.x)
    solution = FractionalSolution(
        y=y,
        objective=result.objective / model.scale,
        raw_objective=result.objective,
        solver=engine.name,
        iterations=result.iterations,
    )
    logger.info(f"LP 求解完成：目标值 {solution.objective:.6f}，Σy = {solution.total_mass:.6f}")
    return solution


def prefix_assignment_objective(profile: PreferenceProfile | SymmetricProfile, y: np.ndarray, s: int) -> float:
    """
    给定入选量 y，按前缀规则重建分配：每个选民从最偏好的候选人开始，
    依次取 min(y_j, 剩余需求) 直到 s 个单位，返回归一化的目标值

    Args:
        profile: 显式或对称画像
        y: 长度为 m 的入选量
        s: 每个选民的需求

    Returns:
        与 solve_lp 同口径的目标值
    """
    y = np.clip(np.asarray(y, dtype=np.float64), 0.0, 1.0)
    if y.shape != (profile.m,):
        raise InvalidArgumentError(f"y 的长度 {y.shape} 与 m={profile.m} 不一致")
    if isinstance(profile, SymmetricProfile):
        mass = np.empty((profile.group_count, profile.m))
        for g in range(profile.group_count):
            for b, block in enumerate(profile.blocks):
                level = y[block.members[0]] if block.size else 0.0
                for lo, hi in profile.block_intervals(g, b):
                    mass[g, lo - 1 : hi] = level
            mass[g, profile.placed[g] - 1] = y[list(profile.critical)]
        weights = np.asarray([float(w) for w in profile.weights])
    else:
        orders = np.asarray(profile.orders, dtype=np.int64)
        mass = y[orders]
        weights = np.asarray([float(w) for w in profile.weights]) / float(profile.total_weight)

    before = np.cumsum(mass, axis=1) - mass
    take = np.clip(np.minimum(mass, s - before), 0.0, None)
    costs = take @ np.arange(1, profile.m + 1, dtype=np.float64)
    return float(weights @ costs)
