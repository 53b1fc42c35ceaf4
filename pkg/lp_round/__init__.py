from .lp_model import LpModel, build_lp
from .rounding import RoundingOutcome, dependent_round, lp_round_select, rounded_size
from .solution import FractionalSolution, prefix_assignment_objective, solve_lp
from .solvers import DenseSimplexSolver, LpResult, LpSolver, ScipyHighsSolver, get_solver

__all__ = [
    "DenseSimplexSolver",
    "FractionalSolution",
    "LpModel",
    "LpResult",
    "LpSolver",
    "RoundingOutcome",
    "ScipyHighsSolver",
    "build_lp",
    "dependent_round",
    "get_solver",
    "lp_round_select",
    "prefix_assignment_objective",
    "rounded_size",
    "solve_lp",
]
