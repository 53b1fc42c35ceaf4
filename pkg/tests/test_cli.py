import csv
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from cli import (
    BENCH_HEADER,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    SuiteResult,
    exit_code_for,
)
from cli.suites import QUICK_ROUNDING_TRIALS, ROUNDING_TRIALS, SuiteConfig, suite_greedy_bounds
from election_core import (
    BudgetExceededError,
    EnumerationCapError,
    InvalidArgumentError,
    ManifestValidationError,
    ProfileParseError,
    SolverError,
    VerificationError,
)
from main import main
from selection_rules import greedy


def _failing_suite(cfg) -> SuiteResult:
    result = SuiteResult("always-fails")
    result.check(False, "故意失败")
    return result


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()


class TestGenCommand(CliTestCase):
    def test_same_seed_same_file(self):
        first, second = self.dir / "a.txt", self.dir / "b.txt"
        for out in (first, second):
            code = main(["gen", "--kind", "random", "--m", "6", "--n", "4", "--seed", "3", "--out", str(out)])
            self.assertEqual(code, EXIT_OK)
        self.assertEqual(first.read_text(encoding="utf-8"), second.read_text(encoding="utf-8"))

    def test_symmetric_instance_as_json(self):
        out = self.dir / "cex.json"
        self.assertEqual(main(["gen", "--kind", "core-cex", "--m", "16", "--out", str(out)]), EXIT_OK)
        data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["kind"], "symmetric")
        self.assertEqual(data["metadata"]["k"], 3)

    def test_symmetric_instance_as_text_is_rejected(self):
        code = main(["gen", "--kind", "core-cex", "--m", "16", "--out", str(self.dir / "cex.txt")])
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_generator_params(self):
        code = main(["gen", "--kind", "sborda-bad", "--m", "20", "--out", str(self.dir / "x.json")])
        self.assertEqual(code, EXIT_USAGE)


class TestSolveCommand(CliTestCase):
    def setUp(self):
        super().setUp()
        self.instance = self.dir / "allperm.txt"
        main(["gen", "--kind", "allperm", "--m", "5", "--out", str(self.instance)])

    def test_greedy_report(self):
        out = self.dir / "report.json"
        code = main(["solve", "--in", str(self.instance), "--rule", "greedy", "--k", "3", "--out", str(out)])
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["instance_id"], "allperm")
        self.assertEqual(data["results"][0]["score"], "3/2")
        self.assertEqual(data["rand"], "3/2")

    def test_csv_report(self):
        out = self.dir / "report.csv"
        code = main(["solve", "--in", str(self.instance), "--rule", "banzhaf", "--k", "2", "--out", str(out)])
        self.assertEqual(code, EXIT_OK)
        rows = list(csv.DictReader(out.read_text(encoding="utf-8").splitlines()))
        self.assertEqual(rows[0]["rule"], "banzhaf")
        self.assertEqual(rows[0]["score_num"], "2")

    def test_enumeration_cap(self):
        code = main(["solve", "--in", str(self.instance), "--rule", "opt", "--k", "3", "--cap", "1"])
        self.assertEqual(code, EXIT_RESOURCE)

    def test_lp_round_needs_s_above_one(self):
        code = main(["solve", "--in", str(self.instance), "--rule", "lp-round", "--k", "3"])
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_file(self):
        code = main(["solve", "--in", str(self.dir / "none.txt"), "--rule", "greedy", "--k", "1"])
        self.assertEqual(code, EXIT_USAGE)

    def test_malformed_file(self):
        bad = self.dir / "bad.txt"
        bad.write_text("3 1\n0 0 1\n", encoding="utf-8")
        self.assertEqual(main(["solve", "--in", str(bad), "--rule", "greedy", "--k", "1"]), EXIT_USAGE)

    def test_non_utf8_file(self):
        bad = self.dir / "latin.txt"
        bad.write_bytes(b"3 1\n\xff 0 1 2\n")
        self.assertEqual(main(["solve", "--in", str(bad), "--rule", "greedy", "--k", "1"]), EXIT_USAGE)


class TestVerifyCommand(CliTestCase):
    def test_quick_suite_passes(self):
        out = self.dir / "verify.json"
        code = main(["verify", "--suite", "order-stats", "--quick", "--seeds", "5", "--out", str(out)])
        self.assertEqual(code, EXIT_OK)
        summary = json.loads(out.read_text(encoding="utf-8"))
        self.assertTrue(summary["suites"][0]["passed"])
        self.assertGreater(summary["suites"][0]["checks"], 0)

    def test_failing_suite_exit_code(self):
        with patch.dict("cli.suites.SUITES", {"always-fails": _failing_suite}):
            code = main(["verify", "--suite", "always-fails"])
        self.assertEqual(code, EXIT_VERIFICATION)

    def test_rounding_trials_default(self):
        for extra, expected in (([], ROUNDING_TRIALS), (["--quick"], QUICK_ROUNDING_TRIALS), (["--trials", "7"], 7)):
            with self.subTest(extra=extra), patch("cli.commands.run_suites", return_value=[]) as run:
                self.assertEqual(main(["verify", "--suite", "lp", *extra]), EXIT_OK)
                self.assertEqual(run.call_args.args[1].trials, expected)

    def test_greedy_bounds_sweeps_every_s(self):
        with patch("cli.suites.greedy", wraps=greedy) as spy:
            result = suite_greedy_bounds(SuiteConfig(seeds=4, seed=2))
        self.assertTrue(result.passed)
        sweeps: list[tuple[int, list[int]]] = []
        for call in spy.call_args_list:
            _, k, s = call.args
            if s == 1:
                sweeps.append((k, []))
            sweeps[-1][1].append(s)
        self.assertEqual(len(sweeps), 4)
        for k, values in sweeps:
            self.assertEqual(values, list(range(1, min(5, k) + 1)))


class TestBenchCommand(CliTestCase):
    def _manifest(self) -> Path:
        data = {
            "schema": 1,
            "name": "tiny",
            "instances": [
                {"id": "rand6", "generator": "random", "params": {"m": 6, "n": 4}, "seed": 5, "k": [1, 2]},
                {"id": "cex9", "generator": "core-cex", "params": {"m": 9}, "k": ["auto"]},
            ],
            "rules": ["greedy", "banzhaf"],
            "s": [1],
            "output": {"json": str(self.dir / "bench.json")},
        }
        path = self.dir / "manifest.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    def _run(self, out: Path) -> list[list[str]]:
        code = main(["bench", "--manifest", str(self._manifest()), "--workers", "1", "--out", str(out)])
        self.assertEqual(code, EXIT_OK)
        return list(csv.reader(out.read_text(encoding="utf-8").splitlines()))

    def test_rows_and_determinism(self):
        first = self._run(self.dir / "first.csv")
        second = self._run(self.dir / "second.csv")
        self.assertEqual(tuple(first[0]), BENCH_HEADER)
        self.assertEqual(len(first), 1 + 6)
        self.assertEqual({row[0] for row in first[1:]}, {"random", "core-cex"})
        # wall_time 之外的列必须完全一致
        self.assertEqual([row[:-1] for row in first], [row[:-1] for row in second])
        reports = json.loads((self.dir / "bench.json").read_text(encoding="utf-8"))
        self.assertEqual(reports["name"], "tiny")
        self.assertEqual(len(reports["reports"]), 3)

    def test_invalid_manifest(self):
        path = self.dir / "bad.json"
        path.write_text(json.dumps({"schema": 1, "instances": [], "rules": ["greedy"]}), encoding="utf-8")
        self.assertEqual(main(["bench", "--manifest", str(path)]), EXIT_USAGE)


class TestExitCodes(unittest.TestCase):
    def test_mapping(self):
        self.assertEqual(exit_code_for(InvalidArgumentError("x")), EXIT_USAGE)
        self.assertEqual(exit_code_for(ProfileParseError("x", 3)), EXIT_USAGE)
        self.assertEqual(exit_code_for(ManifestValidationError("x")), EXIT_USAGE)
        self.assertEqual(exit_code_for(FileNotFoundError("x")), EXIT_USAGE)
        self.assertEqual(exit_code_for(VerificationError("x")), EXIT_VERIFICATION)
        self.assertEqual(exit_code_for(EnumerationCapError(10, 1)), EXIT_RESOURCE)
        self.assertEqual(exit_code_for(BudgetExceededError(10, 1)), EXIT_RESOURCE)
        self.assertEqual(exit_code_for(SolverError("x")), EXIT_FAILURE)


if __name__ == "__main__":
    unittest.main()
