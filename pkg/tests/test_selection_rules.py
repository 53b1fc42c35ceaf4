import itertools
import unittest
from fractions import Fraction

from election_core import (
    Committee,
    EnumerationCapError,
    InvalidArgumentError,
    SymmetricProfile,
    rand_benchmark,
    score_s_borda,
)
from instance_gen import gen_all_permutations, gen_core_counterexample, gen_random
from selection_rules import (
    SelectionTrace,
    banzhaf,
    brute_force_opt,
    expected_completion_score,
    greedy,
    random_committee,
)


class TestGreedy(unittest.TestCase):
    def test_all_permutations_score_equals_rand(self):
        profile = gen_all_permutations(5)
        committee, trace = greedy(profile, 3, 1)
        self.assertEqual(committee.k, 3)
        self.assertEqual(trace.scores[-1], Fraction(3, 2))

    def test_bounds_on_random_profiles(self):
        for seed in range(15):
            m, n = 6 + seed, 4 + seed % 5
            profile = gen_random(m, n, seed=seed)
            for k in (1, m // 3 + 1, m - 1):
                rand = rand_benchmark(m, k)
                _, trace = greedy(profile, k, 1)
                self.assertTrue(trace.is_non_increasing())
                self.assertLessEqual(trace.scores[-1], 2 * rand)
                s = min(3, k)
                _, trace_s = greedy(profile, k, s)
                self.assertLessEqual(trace_s.scores[-1], 2 * s * s * rand)

    def test_trace_is_prefix_chain(self):
        profile = gen_random(9, 7, seed=3)
        _, trace = greedy(profile, 5, 1)
        for j in range(1, 5):
            committee, _ = greedy(profile, j, 1)
            self.assertEqual(sorted(trace.prefix(j)), list(committee.members))

    def test_first_pick_minimises_rank_sum(self):
        profile = gen_random(8, 6, seed=11)
        _, trace = greedy(profile, 2, 1)
        ranks = profile.rank_matrix.sum(axis=0)
        self.assertEqual(trace.candidates[0], int(ranks.argmin()))

    def test_float_mode_respects_bound(self):
        profile = gen_random(30, 40, seed=5)
        _, trace = greedy(profile, 6, 2, exact=False)
        self.assertLessEqual(trace.scores[-1], 8 * rand_benchmark(30, 6))

    def test_trace_dict(self):
        _, trace = greedy(gen_random(6, 5, seed=4), 3, 2)
        restored = SelectionTrace.from_dict(trace.to_dict())
        self.assertEqual((restored.rule, restored.k, restored.s), (trace.rule, trace.k, trace.s))
        self.assertEqual(restored.candidates, trace.candidates)
        self.assertEqual(restored.scores, trace.scores)
        self.assertTrue(restored.is_non_increasing())

    def test_rejects_s_above_k(self):
        with self.assertRaises(InvalidArgumentError):
            greedy(gen_random(5, 3, seed=0), 2, 3)


class TestBanzhaf(unittest.TestCase):
    def test_never_worse_than_rand(self):
        for seed in range(10):
            m = 5 + seed
            profile = gen_random(m, 6, seed=seed)
            for k in (1, 3, m):
                for s in range(1, min(3, k) + 1):
                    _, trace = banzhaf(profile, k, s)
                    self.assertLessEqual(trace.scores[-1], rand_benchmark(m, k, s))

    def test_completion_matches_enumeration(self):
        profile = gen_random(6, 5, seed=21)
        for k in (2, 3, 4):
            for s in range(1, min(3, k) + 1):
                for size in range(0, k + 1):
                    fixed = list(range(size))
                    rest = [c for c in range(6) if c not in fixed]
                    combos = list(itertools.combinations(rest, k - size))
                    total = sum(
                        (score_s_borda(profile, Committee.of(fixed + list(c), 6), s) for c in combos), Fraction(0)
                    )
                    self.assertEqual(expected_completion_score(profile, fixed, k, s), total / len(combos))

    def test_completion_on_symmetric_matches_materialized(self):
        half = Fraction(1, 2)
        small = SymmetricProfile.from_groups(6, (0, 1), [(half, {0: 1, 1: 2}), (half, {0: 6, 1: 1})])
        explicit = small.materialize()
        for s in (1, 2):
            for fixed in ([], [0], [1], [0, 2], [3], [2, 3]):
                self.assertEqual(
                    expected_completion_score(small, fixed, 3, s),
                    expected_completion_score(explicit, fixed, 3, s),
                    f"fixed={fixed}, s={s}",
                )

    def test_empty_completion_is_rand(self):
        profile = gen_random(7, 4, seed=2)
        self.assertEqual(expected_completion_score(profile, [], 3, 2), rand_benchmark(7, 3, 2))

    def test_fixed_larger_than_k(self):
        with self.assertRaises(InvalidArgumentError):
            expected_completion_score(gen_random(5, 2, seed=0), [0, 1, 2], 2, 1)


class TestBruteForce(unittest.TestCase):
    def test_matches_itertools_minimum(self):
        profile = gen_random(7, 9, seed=4)
        for k, s in ((1, 1), (3, 1), (3, 2), (5, 3)):
            best = min(score_s_borda(profile, Committee(c), s) for c in itertools.combinations(range(7), k))
            committee, score = brute_force_opt(profile, k, s)
            self.assertEqual(score, best)
            self.assertEqual(score_s_borda(profile, committee, s), best)

    def test_all_permutations_opt_equals_rand(self):
        profile = gen_all_permutations(4)
        for k in range(1, 5):
            for s in range(1, k + 1):
                self.assertEqual(brute_force_opt(profile, k, s)[1], rand_benchmark(4, k, s))

    def test_cap(self):
        with self.assertRaises(EnumerationCapError) as ctx:
            brute_force_opt(gen_random(10, 3, seed=0), 5, 1, cap=100)
        self.assertEqual(ctx.exception.count, 252)

    def test_symmetric_core_counterexample(self):
        sp = gen_core_counterexample(16)
        committee, _ = brute_force_opt(sp, 3, 1)
        chosen, counts = sp.classify(committee)
        self.assertEqual(chosen, [1])
        self.assertEqual(sum(counts), 2)


class TestRandomCommittee(unittest.TestCase):
    def test_reproducible(self):
        profile = gen_random(12, 10, seed=8)
        first = random_committee(profile, 4, 2, seed=99, trials=50)
        second = random_committee(profile, 4, 2, seed=99, trials=50)
        self.assertEqual(first.best, second.best)
        self.assertEqual(first.mean, second.mean)
        self.assertEqual(first.best_score, score_s_borda(profile, first.best, 2))

    def test_mean_close_to_rand(self):
        profile = gen_random(10, 30, seed=1)
        result = random_committee(profile, 4, 1, seed=7, trials=4000)
        sigma = result.stddev / 4000**0.5
        self.assertLess(abs(result.mean - float(rand_benchmark(10, 4))), 4 * sigma + 0.05)

    def test_trials_must_be_positive(self):
        with self.assertRaises(InvalidArgumentError):
            random_committee(gen_random(5, 2, seed=0), 2, 1, seed=0, trials=0)


if __name__ == "__main__":
    unittest.main()
