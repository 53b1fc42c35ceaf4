import tempfile
import unittest
from pathlib import Path

import numpy as np

from election_core import InvalidArgumentError, score_committee
from instance_gen import gen_random, gen_sborda_bad
from lp_round import (
    DenseSimplexSolver,
    FractionalSolution,
    ScipyHighsSolver,
    build_lp,
    dependent_round,
    get_solver,
    lp_round_select,
    prefix_assignment_objective,
    rounded_size,
    solve_lp,
)
from selection_rules import brute_force_opt


class TestRelaxation(unittest.TestCase):
    def test_lower_bounds_opt(self):
        for seed in range(6):
            profile = gen_random(6, 5, seed=seed)
            for k, s in ((2, 1), (3, 2), (4, 3)):
                model = build_lp(profile, k, s)
                simplex = solve_lp(model, "simplex")
                highs = solve_lp(model, "highs")
                _, opt = brute_force_opt(profile, k, s)
                self.assertLessEqual(simplex.objective, float(opt) * (1 + 1e-6) + 1e-9)
                self.assertAlmostEqual(simplex.objective, highs.objective, places=6)
                self.assertAlmostEqual(simplex.total_mass, k, places=6)

    def test_symmetric_bad_instance_objective(self):
        # 每组把两个关键候选人放在前两名，松弛可以达到 1 + 2
        sp = gen_sborda_bad(20, 4, 2)
        solution = solve_lp(build_lp(sp, 4, 2), "highs")
        self.assertAlmostEqual(solution.objective, 3.0, places=6)
        np.testing.assert_allclose(solution.y[:4], 1.0, atol=1e-6)

    def test_prefix_assignment_reproduces_objective(self):
        profile = gen_random(7, 6, seed=13)
        solution = solve_lp(build_lp(profile, 3, 2), "highs")
        self.assertAlmostEqual(prefix_assignment_objective(profile, solution.y, 2), solution.objective, places=6)

    def test_prefix_assignment_checks_length(self):
        with self.assertRaises(InvalidArgumentError):
            prefix_assignment_objective(gen_random(5, 2, seed=0), np.zeros(4), 1)

    def test_lp_text_export(self):
        model = build_lp(gen_random(3, 2, seed=0), 2, 1)
        text = model.to_lp_text()
        self.assertTrue(text.startswith("\\ s-Borda"))
        for section in ("Minimize", "Subject To", "Bounds", "End"):
            self.assertIn(section, text.splitlines())
        self.assertEqual(sum(line.startswith(" 0 <= ") for line in text.splitlines()), model.variable_count)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "relax.lp"
            model.export(str(path))
            self.assertEqual(path.read_text(encoding="utf-8"), text)

    def test_solution_dict(self):
        solution = solve_lp(build_lp(gen_random(5, 4, seed=2), 2, 1), "highs")
        restored = FractionalSolution.from_dict(solution.to_dict())
        np.testing.assert_allclose(restored.y, solution.y)
        self.assertEqual(restored.objective, solution.objective)

    def test_solver_factory(self):
        self.assertIsInstance(get_solver("simplex"), DenseSimplexSolver)
        self.assertIsInstance(get_solver("highs"), ScipyHighsSolver)
        self.assertIsInstance(get_solver("auto", variables=10), DenseSimplexSolver)
        self.assertIsInstance(get_solver("auto", variables=10**7), ScipyHighsSolver)
        with self.assertRaises(InvalidArgumentError):
            get_solver("cplex")


class TestDependentRounding(unittest.TestCase):
    def test_preserves_sum_and_is_binary(self):
        rng = np.random.default_rng(0)
        y = np.array([0.5, 0.25, 0.75, 1.0, 0.0, 0.5])
        for _ in range(200):
            out = dependent_round(y, rng)
            self.assertEqual(int(out.sum()), 3)
            self.assertTrue(set(out.tolist()) <= {0, 1})
            self.assertEqual(out[3], 1)
            self.assertEqual(out[4], 0)

    def test_marginals(self):
        rng = np.random.default_rng(42)
        y = np.array([0.1, 0.9, 0.3, 0.7, 0.5, 0.5])
        trials = 20_000
        total = np.zeros_like(y)
        for _ in range(trials):
            total += dependent_round(y, rng)
        sigma = np.sqrt(y * (1 - y) / trials)
        self.assertTrue(np.all(np.abs(total / trials - y) <= 4 * sigma + 1e-12))

    def test_rejects_non_integer_sum(self):
        with self.assertRaises(InvalidArgumentError):
            dependent_round([0.5, 0.2], np.random.default_rng(0))

    def test_rejects_out_of_range(self):
        with self.assertRaises(InvalidArgumentError):
            dependent_round([1.5, -0.5], np.random.default_rng(0))


class TestLpRoundSelect(unittest.TestCase):
    def test_rounded_size(self):
        self.assertEqual(rounded_size(80, 16), 60)
        self.assertEqual(rounded_size(4, 2), 1)
        self.assertEqual(rounded_size(4, 4), 2)

    def test_rejects_s_one(self):
        with self.assertRaises(InvalidArgumentError):
            lp_round_select(gen_random(6, 4, seed=0), 3, 1)

    def test_committee_size_and_split(self):
        profile = gen_random(10, 8, seed=3)
        committee, outcome, score = lp_round_select(profile, 4, 4, solver="highs", seed=5)
        self.assertEqual(committee.k, 4)
        self.assertEqual(len(outcome.t1), rounded_size(4, 4))
        self.assertFalse(set(outcome.t1) & set(outcome.t2))
        self.assertEqual(score, score_committee(profile, committee, 4))

    def test_reproducible_with_shared_solution(self):
        profile = gen_random(12, 9, seed=8)
        solution = solve_lp(build_lp(profile, 6, 4), "highs")
        first = lp_round_select(profile, 6, 4, seed=11, solution=solution)
        second = lp_round_select(profile, 6, 4, seed=11, solution=solution)
        self.assertEqual(first[0], second[0])
        self.assertEqual(first[2], second[2])

    def test_symmetric_bad_instance_keeps_criticals(self):
        sp = gen_sborda_bad(40, 8, 4)
        committee, outcome, _ = lp_round_select(sp, 8, 4, solver="highs", seed=0)
        # 松弛把全部质量放在关键候选人上，T1 只能从中取
        self.assertTrue(set(outcome.t1) <= set(range(8)))
        self.assertEqual(committee.k, 8)


if __name__ == "__main__":
    unittest.main()
