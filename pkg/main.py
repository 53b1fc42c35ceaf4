import argparse
import sys

from dotenv import load_dotenv
from pydantic import ValidationError

from cli import SUITES, cmd_bench, cmd_gen, cmd_solve, cmd_verify, run_command
from cli.commands import EXIT_USAGE
from config.settings import RuntimeSettings
from election_core.constant import GENERATOR_NAMES, LP_SOLVER_NAMES, RULE_NAMES
from utils.logger import attach_global_file_handler, set_global_level, setup_logger

logger = setup_logger(__name__)


def _add_common(parser: argparse.ArgumentParser, settings: RuntimeSettings) -> None:
    parser.add_argument("--seed", type=int, default=settings.seed, help="随机种子（默认: MWELECT_SEED）")
    parser.add_argument("--log-level", type=str, default=settings.log_level, help="日志级别 (默认: INFO)")
    parser.add_argument("--log-file", type=str, default=None, help="同时写入的日志文件")


def _add_rule_options(parser: argparse.ArgumentParser, settings: RuntimeSettings) -> None:
    parser.add_argument(
        "--exact",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="精确有理数模式（默认: m < 2000 时开启）",
    )
    parser.add_argument("--cap", type=int, default=settings.enum_cap, help="穷举上限（默认: MWELECT_ENUM_CAP 或 10^7）")
    parser.add_argument("--solver", choices=LP_SOLVER_NAMES, default=settings.lp_solver, help="LP 求解器")
    parser.add_argument("--trials", type=int, default=1, help="random 规则的抽样次数")
    parser.add_argument("--lp-seeds", type=int, default=1, help="lp-round 的舍入种子数（分数取均值）")


def build_parser(settings: RuntimeSettings | None = None) -> argparse.ArgumentParser:
    settings = settings or RuntimeSettings()
    parser = argparse.ArgumentParser(description="委员会选举规则实验工具")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="生成实例文件")
    gen.add_argument("--kind", required=True, choices=GENERATOR_NAMES, help="生成器")
    gen.add_argument("--out", required=True, help="输出路径（.txt / .json）")
    gen.add_argument("--format", choices=("text", "json"), default=None, help="输出格式（默认按后缀）")
    for name, kind in (("m", int), ("n", int), ("k", int), ("s", int), ("layers", int), ("resolution", int)):
        gen.add_argument(f"--{name}", type=kind, default=None)
    for name in ("a", "b", "eps"):
        gen.add_argument(f"--{name}", type=float, default=None)
    gen.add_argument("--cover", type=str, default=None, help="from-cover 的覆盖实例文件")
    gen.add_argument("--copies-cap", type=int, default=None, help="from-cover 每个元素物化的副本上限")
    gen.add_argument("--budget", type=int, default=None, help="from-cover 的物化预算")
    _add_common(gen, settings)
    gen.set_defaults(handler=cmd_gen)

    solve = sub.add_parser("solve", help="在实例上运行一个规则")
    solve.add_argument("--in", dest="input", required=True, help="实例文件（.txt / .json / PrefLib）")
    solve.add_argument("--input-format", choices=("text", "json", "preflib"), default=None)
    solve.add_argument("--rule", required=True, choices=RULE_NAMES)
    solve.add_argument("--k", type=int, required=True, help="委员会大小")
    solve.add_argument("--s", type=int, default=None, help="每个选民计入的代表个数（默认取实例文件头）")
    solve.add_argument("--with-opt", action="store_true", help="附带穷举 Opt 以填写 ratio_vs_opt")
    solve.add_argument("--out", default=None, help="报告路径（.json / .csv）；缺省打印到标准输出")
    _add_rule_options(solve, settings)
    _add_common(solve, settings)
    solve.set_defaults(handler=cmd_solve)

    verify = sub.add_parser("verify", help="运行性质检查组")
    verify.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    verify.add_argument("--seeds", type=int, default=100, help="随机实例个数")
    verify.add_argument("--trials", type=int, default=None, help="每个向量的依赖舍入试验次数")
    verify.add_argument("--quick", action="store_true", help="缩小最重的几项检查")
    verify.add_argument("--solver", choices=LP_SOLVER_NAMES, default=settings.lp_solver)
    verify.add_argument("--out", default=None, help="检查结果 JSON")
    _add_common(verify, settings)
    verify.set_defaults(handler=cmd_verify)

    bench = sub.add_parser("bench", help="按实验清单批量运行")
    bench.add_argument("--manifest", required=True, help="实验清单（.json / .yaml）")
    default_workers = settings.workers if "workers" in settings.model_fields_set else None
    bench.add_argument("--workers", type=int, default=default_workers, help="并行进程数（默认取清单）")
    bench.add_argument("--cap", type=int, default=settings.enum_cap)
    bench.add_argument("--solver", choices=LP_SOLVER_NAMES, default=settings.lp_solver)
    bench.add_argument("--out", default=None, help="CSV 路径（覆盖清单中的 output.csv）")
    _add_common(bench, settings)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    try:
        settings = RuntimeSettings.from_env()
    except ValidationError as e:
        logger.error(f"环境变量配置不合法: {e.errors()[0]['msg']}")
        return EXIT_USAGE

    args = build_parser(settings).parse_args(argv)
    try:
        level = RuntimeSettings(log_level=args.log_level).level
    except ValidationError:
        logger.error(f"未知的日志级别: {args.log_level}")
        return EXIT_USAGE
    set_global_level(level)
    if args.log_file:
        attach_global_file_handler(args.log_file)
    return run_command(args.handler, args)


if __name__ == "__main__":
    sys.exit(main())
