"""按规则运行并汇总分数、相对 Rand / Opt 的比值与满意度比值"""

import csv
import io
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from election_core import (
    Committee,
    EnumerationCapError,
    InvalidArgumentError,
    PreferenceProfile,
    SymmetricProfile,
    rand_benchmark,
    validate_sizes,
)
from election_core.constant import EXACT_MODE_MAX_M, RULE_NAMES
from lp_round import build_lp, lp_round_select, solve_lp
from selection_rules import banzhaf, brute_force_opt, greedy, random_committee
from utils.file_utils import write_json_atomic, write_text_atomic
from utils.logger import setup_logger
from utils.math_utils import format_fraction

logger = setup_logger(__name__)

Profile = PreferenceProfile | SymmetricProfile

CSV_HEADER = (
    "instance_id",
    "m",
    "n",
    "k",
    "s",
    "rule",
    "score_num",
    "score_den",
    "score",
    "ratio_vs_rand",
    "ratio_vs_opt",
    "satisfaction_ratio",
    "wall_time",
)


@dataclass
class RuleOptions:
    """规则运行参数；exact 为 None 时按 m < EXACT_MODE_MAX_M 决定"""

    seed: int | None = None
    exact: bool | None = None
    cap: int | None = None
    solver: str = "auto"
    trials: int = 1
    lp_seeds: int = 1

    def exact_for(self, m: int) -> bool:
        return m < EXACT_MODE_MAX_M if self.exact is None else self.exact


@dataclass
class RuleOutcome:
    committee: Committee
    score: Fraction
    trace: dict[str, Any] | None = None
    extra: dict[str, Any] = field(default_factory=dict)


def _run_greedy(profile: Profile, k: int, s: int, options: RuleOptions) -> RuleOutcome:
    committee, trace = greedy(profile, k, s, exact=options.exact_for(profile.m))
    return RuleOutcome(committee, trace.scores[-1], trace.to_dict())


def _run_banzhaf(profile: Profile, k: int, s: int, options: RuleOptions) -> RuleOutcome:
    committee, trace = banzhaf(profile, k, s)
    return RuleOutcome(committee, trace.scores[-1], trace.to_dict())


def _run_random(profile: Profile, k: int, s: int, options: RuleOptions) -> RuleOutcome:
    """分数列是 trials 次抽样的均值，与 Rand 同口径；委员会取抽到的最好的一个"""
    result = random_committee(profile, k, s, options.seed, options.trials, options.exact_for(profile.m))
    extra = {
        "stddev": result.stddev,
        "trials": result.trials,
        "best_score": format_fraction(result.best_score),
    }
    return RuleOutcome(result.best, result.mean_score, extra=extra)


def _run_opt(profile: Profile, k: int, s: int, options: RuleOptions) -> RuleOutcome:
    committee, score = brute_force_opt(profile, k, s, cap=options.cap)
    return RuleOutcome(committee, score)


def _run_lp_round(profile: Profile, k: int, s: int, options: RuleOptions) -> RuleOutcome:
    """lp_seeds > 1 时同一个松弛解在连续种子上重复舍入，分数取精确均值，委员会取最好的一次"""
    if options.lp_seeds < 1:
        raise InvalidArgumentError("lp_seeds 必须 ≥ 1")
    solution = solve_lp(build_lp(profile, k, s), options.solver)
    base = options.seed or 0
    runs = [lp_round_select(profile, k, s, seed=base + i, solution=solution) for i in range(options.lp_seeds)]
    scores = [score for _, _, score in runs]
    best = min(range(len(runs)), key=lambda i: (scores[i], i))
    extra = {
        "lp_objective": solution.objective,
        "seeds": options.lp_seeds,
        "best_score": format_fraction(scores[best]),
        "rounding": runs[best][1].to_dict(),
    }
    return RuleOutcome(runs[best][0], sum(scores, Fraction(0)) / len(scores), extra=extra)


RULES: dict[str, Callable[[Profile, int, int, RuleOptions], RuleOutcome]] = {
    "greedy": _run_greedy,
    "banzhaf": _run_banzhaf,
    "random": _run_random,
    "opt": _run_opt,
    "lp-round": _run_lp_round,
}


def run_rule(name: str, profile: Profile, k: int, s: int = 1, options: RuleOptions | None = None) -> RuleOutcome:
    """按名字运行一个规则"""
    if name not in RULES:
        raise InvalidArgumentError(f"未知规则 {name!r}，可选 {list(RULES)}")
    return RULES[name](profile, k, s, options or RuleOptions())


def max_satisfaction(m: int, s: int) -> int:
    """每个选民最多得到 s(m+1) − s(s+1)/2 的满意度（前 s 名都在委员会中）"""
    return s * (m + 1) - s * (s + 1) // 2


@dataclass
class RuleResult:
    rule: str
    committee: tuple[int, ...]
    score: Fraction
    ratio_vs_rand: float
    ratio_vs_opt: float | None
    satisfaction: Fraction
    satisfaction_ratio: float
    wall_time: float
    trace: dict[str, Any] | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "committee": list(self.committee),
            "score": format_fraction(self.score),
            "ratio_vs_rand": self.ratio_vs_rand,
            "ratio_vs_opt": self.ratio_vs_opt,
            "satisfaction": format_fraction(self.satisfaction),
            "satisfaction_ratio": self.satisfaction_ratio,
            "wall_time": self.wall_time,
            "trace": self.trace,
            "extra": self.extra,
        }


@dataclass
class RunReport:
    instance_id: str
    m: int
    n: int
    k: int
    s: int
    rand: Fraction
    opt: Fraction | None
    results: list[RuleResult]
    metadata: dict[str, Any] = field(default_factory=dict)

    def result(self, rule: str) -> RuleResult:
        for r in self.results:
            if r.rule == rule:
                return r
        raise KeyError(rule)

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "rand": format_fraction(self.rand),
            "opt": format_fraction(self.opt) if self.opt is not None else None,
            "results": [r.to_dict() for r in self.results],
            "metadata": self.metadata,
        }

    def csv_rows(self) -> list[list[Any]]:
        return [
            [
                self.instance_id,
                self.m,
                self.n,
                self.k,
                self.s,
                r.rule,
                r.score.numerator,
                r.score.denominator,
                f"{float(r.score):.10g}",
                f"{r.ratio_vs_rand:.10g}",
                "" if r.ratio_vs_opt is None else f"{r.ratio_vs_opt:.10g}",
                f"{r.satisfaction_ratio:.10g}",
                f"{r.wall_time:.4f}",
            ]
            for r in self.results
        ]


def rows_to_csv(rows: Sequence[Sequence[Any]], header: Sequence[str] = CSV_HEADER) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_report(report: RunReport, path: Path) -> Path:
    """按后缀写出 .json 或 .csv（原子写入）"""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return write_text_atomic(path, rows_to_csv(report.csv_rows()))
    return write_json_atomic(path, report.to_dict())


def _voter_count(profile: Profile) -> int:
    if isinstance(profile, SymmetricProfile):
        return profile.group_count
    return profile.n


def _try_opt(profile: Profile, k: int, s: int, options: RuleOptions) -> Fraction | None:
    try:
        return brute_force_opt(profile, k, s, cap=options.cap)[1]
    except EnumerationCapError as e:
        logger.warning(f"跳过 Opt：{e}")
        return None


def report(
    profile: Profile,
    rules: Sequence[str],
    k: int,
    s: int = 1,
    options: RuleOptions | None = None,
    instance_id: str = "instance",
    with_opt: bool = True,
) -> RunReport:
    """
    依次运行各规则并填写比值

    Args:
        profile: 显式或对称画像
        rules: 规则名列表（RULE_NAMES 的子集）
        k: 委员会大小
        s: 每个选民计入的代表个数
        options: 规则参数
        instance_id: 写进报告的实例标识
        with_opt: 枚举规模允许时是否附带 Opt

    Returns:
        RunReport
    """
    validate_sizes(profile.m, k, s)
    options = options or RuleOptions()
    unknown = [r for r in rules if r not in RULE_NAMES]
    if unknown:
        raise InvalidArgumentError(f"未知规则 {unknown}，可选 {list(RULES)}")

    rand = rand_benchmark(profile.m, k, s)
    precomputed: dict[str, tuple[RuleOutcome, float]] = {}
    opt = None
    if "opt" in rules:
        start = time.perf_counter()
        outcome = run_rule("opt", profile, k, s, options)
        precomputed["opt"] = (outcome, time.perf_counter() - start)
        opt = outcome.score
    elif with_opt:
        opt = _try_opt(profile, k, s, options)
    best_sat = max_satisfaction(profile.m, s)
    logger.info(f"开始生成报告 {instance_id}：规则 {list(rules)}, m={profile.m}, k={k}, s={s}")

    results = []
    for name in rules:
        if name in precomputed:
            outcome, elapsed = precomputed[name]
        else:
            start = time.perf_counter()
            outcome = run_rule(name, profile, k, s, options)
            elapsed = time.perf_counter() - start
        satisfaction = s * (profile.m + 1) - outcome.score
        results.append(
            RuleResult(
                rule=name,
                committee=outcome.committee.members,
                score=outcome.score,
                ratio_vs_rand=float(outcome.score / rand),
                ratio_vs_opt=float(outcome.score / opt) if opt is not None else None,
                satisfaction=satisfaction,
                satisfaction_ratio=float(satisfaction / best_sat) if best_sat else 1.0,
                wall_time=elapsed,
                trace=outcome.trace,
                extra=outcome.extra,
            )
        )
        logger.info(f"规则 {name}：分数 {float(outcome.score):.6f}，相对 Rand {float(outcome.score / rand):.4f}")
    metadata = dict(profile.metadata) if isinstance(profile, SymmetricProfile) else {}
    return RunReport(instance_id, profile.m, _voter_count(profile), k, s, rand, opt, results, metadata)

