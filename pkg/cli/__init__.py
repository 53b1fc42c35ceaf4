from .bench import BENCH_HEADER, BenchRunner
from .commands import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    cmd_bench,
    cmd_gen,
    cmd_solve,
    cmd_verify,
    exit_code_for,
    run_command,
)
from .suites import SUITES, SuiteConfig, SuiteResult, run_suites

__all__ = [
    "BENCH_HEADER",
    "EXIT_FAILURE",
    "EXIT_OK",
    "EXIT_RESOURCE",
    "EXIT_USAGE",
    "EXIT_VERIFICATION",
    "SUITES",
    "BenchRunner",
    "SuiteConfig",
    "SuiteResult",
    "cmd_bench",
    "cmd_gen",
    "cmd_solve",
    "cmd_verify",
    "exit_code_for",
    "run_command",
    "run_suites",
]
