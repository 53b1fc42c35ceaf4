import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from diagnostics import (
    CSV_HEADER,
    RuleOptions,
    check_monotone_chain,
    core_blocking,
    core_score_bounds,
    eval_monotonicity_bound,
    max_satisfaction,
    minimal_core_alpha,
    monotone_gap_scores,
    monotonicity_branches,
    report,
    run_rule,
    search_monotonicity_witness,
    supporter_weights,
    verify_core_score_bound,
    write_report,
)
from election_core import Committee, InvalidArgumentError, PreferenceProfile
from instance_gen import gen_all_permutations, gen_core_counterexample, gen_monotonicity_gap, gen_random
from selection_rules import greedy, random_committee
from utils.math_utils import parse_fraction


class TestCore(unittest.TestCase):
    def setUp(self):
        self.profile = PreferenceProfile.from_orders(3, [[0, 1, 2]] * 3 + [[1, 0, 2]])

    def test_explicit_blocking(self):
        result = core_blocking(self.profile, Committee((2,)), 1)
        self.assertEqual(result.threshold, 4)
        self.assertEqual(result.blocking, ((0, Fraction(4)), (1, Fraction(4))))
        self.assertFalse(result.in_core)
        self.assertEqual(minimal_core_alpha(self.profile, Committee((2,))), 1)

    def test_minimal_alpha_is_tight(self):
        committee = Committee((0,))
        alpha = minimal_core_alpha(self.profile, committee)
        self.assertEqual(alpha, Fraction(1, 4))
        self.assertFalse(core_blocking(self.profile, committee, alpha).in_core)
        self.assertTrue(core_blocking(self.profile, committee, alpha + Fraction(1, 100)).in_core)

    def test_score_bound_holds_inside_core(self):
        self.assertTrue(verify_core_score_bound(self.profile, Committee((0,)), Fraction(1, 2)))
        with self.assertRaises(InvalidArgumentError):
            verify_core_score_bound(self.profile, Committee((2,)), Fraction(1, 2))

    def test_score_bounds(self):
        self.assertEqual(core_score_bounds(8, 3, Fraction(1)), (Fraction(8, 3), Fraction(3)))

    def test_alpha_must_be_positive(self):
        with self.assertRaises(InvalidArgumentError):
            core_blocking(self.profile, Committee((0,)), 0)

    def test_counterexample_blocked_by_first_critical(self):
        sp = gen_core_counterexample(16)
        k = sp.metadata["k"]
        committee, _ = greedy(sp, k, 1)
        chosen, counts = sp.classify(committee)
        self.assertEqual(chosen, [1])
        self.assertEqual(sum(counts), k - 1)
        result = core_blocking(sp, committee, Fraction(k, 3))
        self.assertIn((0, Fraction(1, 3)), result.blocking)

    def test_symmetric_supporters_match_materialized(self):
        sp = gen_core_counterexample(8)
        explicit = sp.materialize()
        for members in ((1, 2), (0, 3), (2, 3, 4), (1,)):
            committee = Committee(members)
            symmetric = supporter_weights(sp, committee)
            for c, w in supporter_weights(explicit, committee).items():
                self.assertEqual(symmetric.get(c, Fraction(0)), w / explicit.total_weight, f"{members}: {c}")


class TestMonotonicity(unittest.TestCase):
    def test_bound_branch(self):
        bound, branch = eval_monotonicity_bound(0.377, 0.552)
        self.assertEqual(branch, "Y")
        self.assertGreater(bound, 1.015)
        self.assertLess(bound, 1.016)
        with self.assertRaises(InvalidArgumentError):
            monotonicity_branches(0.6, 0.4)

    def test_banzhaf_not_monotone_on_gap_instance(self):
        ok, k = check_monotone_chain("banzhaf", gen_monotonicity_gap(1000), 2)
        self.assertFalse(ok)
        self.assertEqual(k, 2)

    def test_greedy_chain_is_monotone(self):
        for seed in range(5):
            ok, k = check_monotone_chain("greedy", gen_random(7, 6, seed=seed), 7)
            self.assertTrue(ok)
            self.assertIsNone(k)

    def test_witness_search_finds_gap_instance(self):
        gap = gen_monotonicity_gap(1000)
        found = search_monotonicity_witness("banzhaf", candidates=[gap], k_max=2, seeds=[])
        self.assertIsNotNone(found)
        profile, k = found
        self.assertIs(profile, gap)
        self.assertEqual(k, 2)

    def test_witness_search_gives_up_for_greedy(self):
        self.assertIsNone(search_monotonicity_witness("greedy", k_max=4, seeds=range(3)))

    def test_gap_scores_follow_closed_forms(self):
        m = 2000
        scores = monotone_gap_scores(gen_monotonicity_gap(m))
        branches = monotonicity_branches(0.377, 0.552)
        self.assertAlmostEqual(float(2 * scores["Y"] / (m + 1)), branches["Y"], delta=10 / m)
        self.assertAlmostEqual(float(3 * scores["XX"] / (m + 1)), branches["XX"], delta=10 / m)
        self.assertAlmostEqual(float(3 * scores["XY"] / (m + 1)), branches["XY"], delta=10 / m)
        self.assertLess(scores["X"], scores["Y"])
        self.assertLess(scores["YY"], scores["XY"])


class TestReport(unittest.TestCase):
    def test_all_permutations_every_ratio_is_one(self):
        run = report(gen_all_permutations(4), ["greedy", "banzhaf", "opt"], 2, 1)
        self.assertEqual(run.rand, Fraction(5, 3))
        for result in run.results:
            self.assertEqual(result.ratio_vs_rand, 1.0)
            self.assertEqual(result.ratio_vs_opt, 1.0)

    def test_csv_rows_carry_exact_score(self):
        run = report(gen_random(6, 5, seed=1), ["greedy", "random"], 3, 2, RuleOptions(seed=4, trials=20))
        rows = run.csv_rows()
        self.assertEqual(len(rows), 2)
        self.assertEqual(len(rows[0]), len(CSV_HEADER))
        greedy_row = rows[0]
        score = run.result("greedy").score
        self.assertEqual((greedy_row[6], greedy_row[7]), (score.numerator, score.denominator))

    def test_satisfaction_ratio(self):
        self.assertEqual(max_satisfaction(5, 2), 9)
        run = report(gen_random(5, 4, seed=2), ["opt"], 2, 1)
        result = run.result("opt")
        self.assertEqual(result.satisfaction, 6 - result.score)

    def test_unknown_rule(self):
        with self.assertRaises(InvalidArgumentError):
            report(gen_random(4, 2, seed=0), ["majority"], 2)
        with self.assertRaises(InvalidArgumentError):
            run_rule("majority", gen_random(4, 2, seed=0), 2)

    def test_lp_round_averages_seeds(self):
        profile = gen_random(8, 6, seed=5)
        outcome = run_rule("lp-round", profile, 4, 2, RuleOptions(seed=1, lp_seeds=3, solver="highs"))
        self.assertEqual(outcome.extra["seeds"], 3)
        self.assertLessEqual(parse_fraction(outcome.extra["best_score"]), outcome.score)
        self.assertEqual(outcome.committee.k, 4)

    def test_random_reports_mean_score(self):
        profile = gen_random(7, 5, seed=3)
        options = RuleOptions(seed=8, trials=200)
        outcome = run_rule("random", profile, 3, 2, options)
        baseline = random_committee(profile, 3, 2, seed=8, trials=200)
        self.assertEqual(outcome.score, baseline.mean_score)
        self.assertAlmostEqual(float(outcome.score), baseline.mean)
        self.assertEqual(parse_fraction(outcome.extra["best_score"]), baseline.best_score)
        self.assertLessEqual(baseline.best_score, outcome.score)

    def test_opt_skipped_above_cap(self):
        run = report(gen_random(10, 3, seed=0), ["greedy"], 5, 1, RuleOptions(cap=10))
        self.assertIsNone(run.opt)
        self.assertIsNone(run.result("greedy").ratio_vs_opt)

    def test_write_json_and_csv(self):
        run = report(gen_random(5, 3, seed=9), ["greedy"], 2, 1)
        with tempfile.TemporaryDirectory() as tmp:
            json_path = write_report(run, Path(tmp) / "run.json")
            csv_path = write_report(run, Path(tmp) / "run.csv")
            data = json.loads(json_path.read_text(encoding="utf-8"))
            lines = csv_path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(data["results"][0]["rule"], "greedy")
        self.assertEqual(lines[0], ",".join(CSV_HEADER))
        self.assertEqual(len(lines), 2)


if __name__ == "__main__":
    unittest.main()
