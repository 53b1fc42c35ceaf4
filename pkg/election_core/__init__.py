from .exceptions import (
    BudgetExceededError,
    ElectionError,
    EnumerationCapError,
    InvalidArgumentError,
    ManifestValidationError,
    ProfileParseError,
    SolverError,
    VerificationError,
)
from .order_stats import expected_excess, expected_order_stat, expected_order_stat_sum, expected_smallest_sum
from .profile import (
    Committee,
    DummyBlock,
    PreferenceProfile,
    RankPool,
    Ranking,
    SymmetricProfile,
    complement_intervals,
    ranks_to_intervals,
)
from .scoring import (
    Score,
    expected_score_symmetric,
    rand_benchmark,
    score_committee,
    score_s_borda,
    score_satisfaction,
    score_symmetric_committee,
    validate_sizes,
    weighted_total,
)

Profile = PreferenceProfile | SymmetricProfile

__all__ = [
    "BudgetExceededError",
    "Committee",
    "DummyBlock",
    "ElectionError",
    "EnumerationCapError",
    "InvalidArgumentError",
    "ManifestValidationError",
    "PreferenceProfile",
    "Profile",
    "ProfileParseError",
    "RankPool",
    "Ranking",
    "Score",
    "SolverError",
    "SymmetricProfile",
    "VerificationError",
    "complement_intervals",
    "expected_excess",
    "expected_order_stat",
    "expected_order_stat_sum",
    "expected_score_symmetric",
    "expected_smallest_sum",
    "rand_benchmark",
    "ranks_to_intervals",
    "score_committee",
    "score_s_borda",
    "score_satisfaction",
    "score_symmetric_committee",
    "validate_sizes",
    "weighted_total",
]
