from .banzhaf import banzhaf, expected_completion_score
from .brute_force import brute_force_opt
from .greedy import greedy
from .random_rule import RandomBaselineResult, random_committee
from .trace import Pick, SelectionTrace

__all__ = [
    "Pick",
    "RandomBaselineResult",
    "SelectionTrace",
    "banzhaf",
    "brute_force_opt",
    "expected_completion_score",
    "greedy",
    "random_committee",
]
