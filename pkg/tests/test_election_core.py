import itertools
import unittest
from fractions import Fraction

from election_core import (
    Committee,
    InvalidArgumentError,
    PreferenceProfile,
    SymmetricProfile,
    expected_order_stat,
    expected_order_stat_sum,
    expected_score_symmetric,
    rand_benchmark,
    score_committee,
    score_s_borda,
    score_satisfaction,
    validate_sizes,
)


class TestExplicitScoring(unittest.TestCase):
    def setUp(self):
        self.profile = PreferenceProfile.from_orders(4, [[0, 1, 2, 3], [3, 2, 1, 0]])

    def test_one_borda(self):
        self.assertEqual(score_s_borda(self.profile, Committee((0, 3)), 1), 1)
        self.assertEqual(score_s_borda(self.profile, Committee((1, 2)), 1), 2)

    def test_s_borda_sums_smallest_ranks(self):
        self.assertEqual(score_s_borda(self.profile, Committee((1, 2)), 2), 5)
        self.assertEqual(score_s_borda(self.profile, Committee((0, 1, 3)), 2), Fraction(7, 2))

    def test_weights_act_as_copies(self):
        weighted = PreferenceProfile.from_orders(4, [[0, 1, 2, 3], [3, 2, 1, 0]], [2, 1])
        self.assertEqual(score_s_borda(weighted, Committee((0,)), 1), Fraction(6, 3))

    def test_satisfaction_complements_score(self):
        committee = Committee((1, 2))
        self.assertEqual(score_satisfaction(self.profile, committee, 1), 5 - 2)

    def test_committee_rejects_duplicates(self):
        with self.assertRaises(InvalidArgumentError):
            Committee((1, 1))
        with self.assertRaises(InvalidArgumentError):
            Committee.of([0, 7], 4)

    def test_ranking_must_be_permutation(self):
        with self.assertRaises(InvalidArgumentError):
            PreferenceProfile.from_orders(3, [[0, 0, 1]])

    def test_size_preconditions(self):
        validate_sizes(5, 3, 2)
        with self.assertRaises(InvalidArgumentError):
            validate_sizes(5, 3, 4)
        with self.assertRaises(InvalidArgumentError):
            validate_sizes(3, 5, 1)


class TestRandBenchmark(unittest.TestCase):
    def test_values(self):
        self.assertEqual(rand_benchmark(10, 4), Fraction(11, 5))
        self.assertEqual(rand_benchmark(10, 4, 2), Fraction(33, 5))
        self.assertEqual(rand_benchmark(7, 7), 1)

    def test_matches_average_over_all_committees(self):
        profile = PreferenceProfile.from_orders(5, [[2, 0, 4, 1, 3], [1, 3, 0, 2, 4]])
        for k in range(1, 6):
            for s in range(1, k + 1):
                committees = list(itertools.combinations(range(5), k))
                mean = sum((score_s_borda(profile, Committee(c), s) for c in committees), Fraction(0))
                self.assertEqual(mean / len(committees), rand_benchmark(5, k, s))


class TestOrderStatistics(unittest.TestCase):
    def test_exhaustive_small(self):
        for m in range(1, 7):
            for k in range(1, m + 1):
                combos = list(itertools.combinations(range(1, m + 1), k))
                for t in range(1, k + 1):
                    mean = Fraction(sum(c[t - 1] for c in combos), len(combos))
                    self.assertEqual(expected_order_stat(m, k, t), mean, f"m={m}, k={k}, t={t}")

    def test_invalid_index(self):
        with self.assertRaises(InvalidArgumentError):
            expected_order_stat(5, 2, 3)

    def test_sum_with_fixed_ranks(self):
        fixed, pool = [3], [1, 2, 5, 6]
        for draws in range(0, 5):
            for s in range(1, draws + 2):
                combos = list(itertools.combinations(pool, draws))
                mean = Fraction(sum(sum(sorted(fixed + list(c))[:s]) for c in combos), len(combos))
                self.assertEqual(expected_order_stat_sum(fixed, pool, draws, s), mean)

    def test_sum_rejects_short_committee(self):
        with self.assertRaises(InvalidArgumentError):
            expected_order_stat_sum([], [1, 2, 3], 1, 2)


class TestSymmetricProfile(unittest.TestCase):
    def setUp(self):
        half = Fraction(1, 2)
        self.sp = SymmetricProfile.from_groups(5, (0, 1), [(half, {0: 1, 1: 2}), (half, {0: 5, 1: 1})])

    def test_default_block_holds_remaining_candidates(self):
        self.assertEqual(len(self.sp.blocks), 1)
        self.assertEqual(self.sp.blocks[0].members, (2, 3, 4))

    def test_scores_match_materialized_profile(self):
        explicit = self.sp.materialize()
        self.assertEqual(explicit.total_weight, 1)
        for k, s in ((1, 1), (2, 1), (3, 2), (4, 3)):
            for members in itertools.combinations(range(5), k):
                committee = Committee(members)
                self.assertEqual(
                    score_committee(self.sp, committee, s),
                    score_s_borda(explicit, committee, s),
                    f"committee={members}, s={s}",
                )

    def test_expected_score_by_counts(self):
        # 只选可交换候选人 1 个：组 1 里它均匀落在 {3,4,5}，组 2 里落在 {2,3,4}
        self.assertEqual(expected_score_symmetric(self.sp, (), 1, 1), Fraction(1, 2) * 4 + Fraction(1, 2) * 3)

    def test_weights_must_sum_to_one(self):
        with self.assertRaises(InvalidArgumentError):
            SymmetricProfile.from_groups(4, (0,), [(Fraction(1, 3), {0: 1})])

    def test_group_must_place_every_critical(self):
        with self.assertRaises(InvalidArgumentError):
            SymmetricProfile.from_groups(4, (0, 1), [(1, {0: 1})])

    def test_class_count(self):
        # 关键候选人子集 × 可交换候选人个数：k=2 时 {∅:1, 单个:2, 两个:1} = 4 类
        self.assertEqual(self.sp.class_count(2), 4)


if __name__ == "__main__":
    unittest.main()
