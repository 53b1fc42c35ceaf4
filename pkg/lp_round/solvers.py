"""
可插拔的 LP 求解器

求解器契约：返回的解对每条约束的违反量不超过 1e-7，目标值与最优值的相对误差不超过 1e-6，
同一输入的主元选择是确定的。
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from election_core import InvalidArgumentError, SolverError
from election_core.constant import LP_SIMPLEX_MAX_VARIABLES
from utils.logger import setup_logger

from .lp_model import LpModel

logger = setup_logger(__name__)


@dataclass(frozen=True)
class LpResult:
    x: np.ndarray
    objective: float
    iterations: int
    solver: str


class LpSolver(ABC):
    """LP 求解器基类"""

    name = "base"

    @abstractmethod
    def solve(self, model: LpModel) -> LpResult:
        pass


class DenseSimplexSolver(LpSolver):
    """
    稠密两阶段单纯形（Bland 规则，numpy float64）

    只适合小模型：所有上界都展开成显式约束行，表格规模约为 (约束数 + 变量数)²。
    """

    name = "simplex"

    def __init__(self, max_iterations: int = 100_000, tol: float = 1e-9):
        self.max_iterations = max_iterations
        self.tol = tol

    def _standard_form(self, model: LpModel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        转成 A z = b, z ≥ 0, b ≥ 0

        z = [原变量, 每条不等式与每个上界的松弛变量]
        """
        n = model.variable_count
        a_ub = model.a_ub.toarray()
        a_eq = model.a_eq.toarray()
        rows_ub, rows_eq = a_ub.shape[0], a_eq.shape[0]
        slack = rows_ub + n

        a = np.zeros((rows_ub + n + rows_eq, n + slack))
        a[:rows_ub, :n] = a_ub
        a[rows_ub : rows_ub + n, :n] = np.eye(n)
        a[: rows_ub + n, n:] = np.eye(slack)
        a[rows_ub + n :, :n] = a_eq
        b = np.concatenate([model.b_ub, np.ones(n), model.b_eq]).astype(np.float64)

        negative = b < 0
        a[negative] *= -1
        b[negative] *= -1
        c = np.concatenate([model.c, np.zeros(slack)])
        return a, b, c

    def _pivot(self, table: np.ndarray, basis: list[int], row: int, col: int) -> None:
        table[row] /= table[row, col]
        factors = table[:, col].copy()
        factors[row] = 0.0
        table -= np.outer(factors, table[row])
        basis[row] = col

    def _iterate(self, table: np.ndarray, basis: list[int], allowed: int, iterations: int) -> int:
        """对前 allowed 列做 Bland 规则的主元迭代，返回累计迭代次数"""
        while True:
            reduced = table[-1, :allowed]
            entering = np.flatnonzero(reduced < -self.tol)
            if entering.size == 0:
                return iterations
            col = int(entering[0])
            column = table[:-1, col]
            candidates = np.flatnonzero(column > self.tol)
            if candidates.size == 0:
                raise SolverError("线性规划无界")
            ratios = table[candidates, -1] / column[candidates]
            best = ratios.min()
            ties = candidates[ratios <= best + self.tol * max(1.0, abs(best))]
            row = int(min(ties, key=lambda i: basis[i]))
            self._pivot(table, basis, row, col)
            iterations += 1
            if iterations > self.max_iterations:
                raise SolverError(f"单纯形迭代超过上限 {self.max_iterations}")

    def solve(self, model: LpModel) -> LpResult:
        a, b, c = self._standard_form(model)
        rows, cols = a.shape

        # 第一阶段：每行一个人工变量，最小化人工变量之和
        table = np.zeros((rows + 1, cols + rows + 1))
        table[:rows, :cols] = a
        table[:rows, cols : cols + rows] = np.eye(rows)
        table[:rows, -1] = b
        table[-1, :cols] = -a.sum(axis=0)
        table[-1, -1] = -b.sum()
        basis = list(range(cols, cols + rows))
        iterations = self._iterate(table, basis, cols + rows, 0)
        if table[-1, -1] < -1e-7 * max(1.0, float(b.sum())):
            raise SolverError("线性规划不可行")

        # 把残留在基中的人工变量换出；换不出的行是冗余约束
        keep = []
        for i in range(rows):
            if basis[i] < cols:
                keep.append(i)
                continue
            candidates = np.flatnonzero(np.abs(table[i, :cols]) > self.tol)
            if candidates.size:
                self._pivot(table, basis, i, int(candidates[0]))
                keep.append(i)

        # 第二阶段：去掉人工列，重建目标行
        phase2 = np.zeros((len(keep) + 1, cols + 1))
        phase2[:-1, :cols] = table[keep, :cols]
        phase2[:-1, -1] = table[keep, -1]
        basis = [basis[i] for i in keep]
        phase2[-1, :cols] = c
        for i, var in enumerate(basis):
            phase2[-1] -= c[var] * phase2[i]
        iterations = self._iterate(phase2, basis, cols, iterations)

        z = np.zeros(cols)
        for i, var in enumerate(basis):
            z[var] = phase2[i, -1]
        x = np.clip(z[: model.variable_count], 0.0, 1.0)
        logger.debug(f"单纯形完成：{iterations} 次迭代")
        return LpResult(x=x, objective=float(model.c @ x), iterations=iterations, solver=self.name)


class ScipyHighsSolver(LpSolver):
    """scipy.optimize.linprog 的 HiGHS 后端，直接接受稀疏约束矩阵"""

    name = "highs"

    def __init__(self, time_limit: float | None = None):
        self.time_limit = time_limit

    def solve(self, model: LpModel) -> LpResult:
        options = {"primal_feasibility_tolerance": 1e-9, "dual_feasibility_tolerance": 1e-9}
        if self.time_limit is not None:
            options["time_limit"] = self.time_limit
        res = linprog(
            model.c,
            A_ub=model.a_ub if model.a_ub.shape[0] else None,
            b_ub=model.b_ub if model.a_ub.shape[0] else None,
            A_eq=model.a_eq if model.a_eq.shape[0] else None,
            b_eq=model.b_eq if model.a_eq.shape[0] else None,
            bounds=(0, 1),
            method="highs",
            options=options,
        )
        if res.status != 0 or res.x is None:
            raise SolverError(f"HiGHS 求解失败（status={res.status}）: {res.message}")
        x = np.clip(np.asarray(res.x, dtype=np.float64), 0.0, 1.0)
        return LpResult(x=x, objective=float(model.c @ x), iterations=int(getattr(res, "nit", 0)), solver=self.name)


SOLVERS: dict[str, type[LpSolver]] = {
    DenseSimplexSolver.name: DenseSimplexSolver,
    ScipyHighsSolver.name: ScipyHighsSolver,
}


def get_solver(name: str | LpSolver | None = "auto", variables: int = 0) -> LpSolver:
    """
    按名称取求解器；"auto" 在变量数不超过阈值时用内置单纯形，否则用 HiGHS

    Args:
        name: "auto" / "simplex" / "highs"，或已构造的求解器
        variables: 模型变量数（仅 auto 使用）

    Returns:
        LpSolver 实例
    """
    if isinstance(name, LpSolver):
        return name
    name = (name or "auto").lower()
    if name == "auto":
        name = DenseSimplexSolver.name if variables <= LP_SIMPLEX_MAX_VARIABLES else ScipyHighsSolver.name
    if name not in SOLVERS:
        raise InvalidArgumentError(f"未知的 LP 求解器: {name}（可选 auto / {' / '.join(SOLVERS)}）")
    return SOLVERS[name]()
