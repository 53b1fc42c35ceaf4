from .core import (
    CoreReport,
    core_blocking,
    core_score_bounds,
    minimal_core_alpha,
    supporter_weights,
    verify_core_score_bound,
)
from .monotonicity import (
    check_monotone_chain,
    eval_monotonicity_bound,
    monotone_gap_scores,
    monotonicity_branches,
    search_monotonicity_witness,
)
from .report import (
    CSV_HEADER,
    RULE_NAMES,
    RuleOptions,
    RuleOutcome,
    RuleResult,
    RunReport,
    max_satisfaction,
    report,
    rows_to_csv,
    run_rule,
    write_report,
)

__all__ = [
    "CSV_HEADER",
    "RULE_NAMES",
    "CoreReport",
    "RuleOptions",
    "RuleOutcome",
    "RuleResult",
    "RunReport",
    "check_monotone_chain",
    "core_blocking",
    "core_score_bounds",
    "eval_monotonicity_bound",
    "max_satisfaction",
    "minimal_core_alpha",
    "monotone_gap_scores",
    "monotonicity_branches",
    "report",
    "rows_to_csv",
    "run_rule",
    "search_monotonicity_witness",
    "supporter_weights",
    "verify_core_score_bound",
]
