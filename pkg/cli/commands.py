import argparse
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

from config.experiment_schema import load_manifest
from diagnostics import RuleOptions, RunReport, report, write_report
from election_core import (
    BudgetExceededError,
    ElectionError,
    EnumerationCapError,
    InvalidArgumentError,
    ManifestValidationError,
    ProfileParseError,
    VerificationError,
)
from instance_gen import generate_instance, load_instance, save_profile
from utils.file_utils import write_json_atomic
from utils.logger import setup_logger

from .bench import BenchRunner
from .suites import QUICK_ROUNDING_TRIALS, ROUNDING_TRIALS, SUITES, SuiteConfig, SuiteResult, run_suites

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_VERIFICATION = 3
EXIT_RESOURCE = 4

# gen 命令里可以透传给生成器的参数名
GEN_PARAM_NAMES = ("m", "n", "k", "s", "a", "b", "layers", "resolution", "cover", "eps", "copies_cap", "budget")


def exit_code_for(error: BaseException) -> int:
    """异常 → 退出码：2 参数/输入错误，3 检查失败，4 资源上限，其余 1"""
    if isinstance(error, InvalidArgumentError | ProfileParseError | ManifestValidationError | FileNotFoundError):
        return EXIT_USAGE
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION
    if isinstance(error, EnumerationCapError | BudgetExceededError):
        return EXIT_RESOURCE
    return EXIT_FAILURE


def _rule_options(args: argparse.Namespace) -> RuleOptions:
    return RuleOptions(
        seed=args.seed,
        exact=args.exact,
        cap=args.cap,
        solver=args.solver,
        trials=args.trials,
        lp_seeds=args.lp_seeds,
    )


def cmd_gen(args: argparse.Namespace) -> Path:
    """生成实例并写入文件；同样的参数与种子得到同样的文件"""
    params = {name: getattr(args, name) for name in GEN_PARAM_NAMES if getattr(args, name, None) is not None}
    profile = generate_instance(args.kind, params, args.seed)
    path = save_profile(profile, Path(args.out), args.format, s_default=args.s or 1)
    logger.info(f"实例已写入: {path}（m={profile.m}）")
    return path


def cmd_solve(args: argparse.Namespace) -> RunReport:
    """
    读取实例并运行一个规则，报告写到 --out（.json / .csv），缺省打印 JSON

    s 缺省取实例文件头里的默认值。
    """
    profile, s_default = load_instance(Path(args.input), args.input_format)
    s = args.s if args.s is not None else s_default
    run = report(
        profile,
        [args.rule],
        args.k,
        s,
        _rule_options(args),
        instance_id=Path(args.input).stem,
        with_opt=args.with_opt,
    )
    if args.out:
        path = write_report(run, Path(args.out))
        logger.info(f"报告已写入: {path}")
    else:
        print(json.dumps(run.to_dict(), ensure_ascii=False, indent=2))
    return run


def cmd_verify(args: argparse.Namespace) -> list[SuiteResult]:
    """
    运行检查组并汇总

    Raises:
        VerificationError: 任一检查组有失败项
    """
    names = list(SUITES) if args.suite == "all" else [args.suite]
    trials = args.trials
    if trials is None:
        trials = QUICK_ROUNDING_TRIALS if args.quick else ROUNDING_TRIALS
    cfg = SuiteConfig(
        seeds=args.seeds,
        seed=args.seed if args.seed is not None else 0,
        quick=args.quick,
        trials=trials,
        solver=args.solver,
    )
    results = run_suites(names, cfg)
    summary: dict[str, Any] = {"suites": [r.to_dict() for r in results]}
    if args.out:
        write_json_atomic(Path(args.out), summary)
    for r in results:
        print(f"{r.suite}: {'PASS' if r.passed else 'FAIL'} ({r.checks} checks) {json.dumps(r.notes, ensure_ascii=False)}")

    failed = [r.suite for r in results if not r.passed]
    if failed:
        raise VerificationError(f"检查组失败: {', '.join(failed)}")
    return results


def cmd_bench(args: argparse.Namespace) -> list[list[Any]]:
    """按实验清单批量运行，写出 CSV（表头见 BENCH_HEADER）与可选的 JSON"""
    manifest = load_manifest(Path(args.manifest))
    runner = BenchRunner(manifest, workers=args.workers, cap=args.cap, solver=args.solver)
    rows, reports = runner.run()
    runner.write(rows, reports, Path(args.out) if args.out else None)
    return rows


def run_command(handler: Callable[[argparse.Namespace], Any], args: argparse.Namespace) -> int:
    """执行一个子命令，把项目异常转换为退出码"""
    try:
        handler(args)
        return EXIT_OK
    except (ElectionError, FileNotFoundError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)
    except Exception as e:
        logger.error(f"命令执行失败: {e}", exc_info=True)
        return EXIT_FAILURE
