import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from election_core import (
    BudgetExceededError,
    Committee,
    InvalidArgumentError,
    ProfileParseError,
    SymmetricProfile,
    score_committee,
)
from instance_gen import (
    CoverInstance,
    SpiralParams,
    concentration_voter_count,
    cover_dimensions,
    format_cover,
    gen_all_permutations,
    gen_core_counterexample,
    gen_from_cover,
    gen_monotonicity_gap,
    gen_random,
    gen_sborda_bad,
    gen_spiral,
    generate_instance,
    load_instance,
    parse_cover,
    parse_preflib,
    parse_profile_text,
    save_profile,
    spiral_summary,
)

YES_COVER = CoverInstance(
    n_u=12,
    k_c=3,
    sets=[[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11], [0, 1, 4, 8], [2, 5, 6, 9], [3, 7, 10, 11]],
)


class TestRandomGenerators(unittest.TestCase):
    def test_seed_determinism(self):
        self.assertEqual(gen_random(8, 5, seed=3), gen_random(8, 5, seed=3))
        self.assertNotEqual(gen_random(8, 5, seed=3), gen_random(8, 5, seed=4))

    def test_all_permutations(self):
        profile = gen_all_permutations(3)
        self.assertEqual(profile.n, 6)
        self.assertEqual(len(set(profile.orders)), 6)
        with self.assertRaises(InvalidArgumentError):
            gen_all_permutations(9)

    def test_concentration_voter_count(self):
        self.assertEqual(concentration_voter_count(20, 3, 0.2), 8000)
        with self.assertRaises(InvalidArgumentError):
            concentration_voter_count(20, 3, 1.5)


class TestConstructions(unittest.TestCase):
    def test_core_counterexample(self):
        sp = gen_core_counterexample(16)
        self.assertEqual(sp.metadata["k"], 3)
        self.assertEqual(sp.critical, (0, 1))
        self.assertEqual(sp.weights, (Fraction(1, 3),) * 3)
        with self.assertRaises(InvalidArgumentError):
            gen_core_counterexample(7)

    def test_sborda_bad_all_criticals(self):
        sp = gen_sborda_bad(400, 80, 16)
        self.assertEqual(sp.group_count, 5)
        score = score_committee(sp, Committee(tuple(range(80))), 16)
        self.assertLessEqual(score, 136)
        with self.assertRaises(InvalidArgumentError):
            gen_sborda_bad(400, 80, 3)

    def test_monotonicity_gap_blocks(self):
        sp = gen_monotonicity_gap(1000)
        sizes = {b.name: b.size for b in sp.blocks}
        self.assertEqual(sizes, {"X": 176, "Y": 824})
        self.assertEqual(sp.metadata["x_ranks"], [377, 552])
        with self.assertRaises(InvalidArgumentError):
            gen_monotonicity_gap(1000, a=0.6, b=0.5)

    def test_spiral_matches_summary(self):
        params = SpiralParams(resolution=100)
        sp = gen_spiral(params)
        summary = spiral_summary(params)
        self.assertEqual(sp.metadata["k"], summary["k"])
        self.assertEqual(len(sp.critical), summary["k"])
        self.assertEqual(sum(sp.weights, Fraction(0)), 1)
        self.assertGreater(summary["continuum_ratio"], 1.5)

    def test_spiral_rejects_bad_resolution(self):
        with self.assertRaises(ValueError):
            SpiralParams(resolution=300)


class TestCoverReduction(unittest.TestCase):
    def test_dimensions(self):
        self.assertEqual(cover_dimensions(YES_COVER, 0.05), (72, 216000))
        with self.assertRaises(InvalidArgumentError):
            cover_dimensions(YES_COVER, 0.5)

    def test_materialized_copies_carry_weight(self):
        profile = gen_from_cover(YES_COVER, 0.05, seed=1)
        self.assertEqual(profile.m, 72)
        self.assertEqual(profile.n, 192)
        self.assertEqual(set(profile.weights), {Fraction(13500)})

    def test_perfect_cover_committee_scores_low(self):
        profile = gen_from_cover(YES_COVER, 0.05, seed=1)
        self.assertEqual(score_committee(profile, Committee((0, 1, 2)), 1), 1)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError) as ctx:
            gen_from_cover(YES_COVER, 0.05, seed=1, budget=1000)
        self.assertEqual(ctx.exception.required, 12 * 16 * 72)

    def test_best_coverage(self):
        self.assertEqual(YES_COVER.best_coverage(), (12, (0, 1, 2)))

    def test_parse_round_trip_and_errors(self):
        self.assertEqual(parse_cover(format_cover(YES_COVER)), YES_COVER)
        with self.assertRaises(ProfileParseError) as ctx:
            parse_cover("4 2 2\n0 1\n2 x\n")
        self.assertEqual(ctx.exception.line, 3)
        with self.assertRaises(ProfileParseError):
            parse_cover("4 2 2\n0 1 2\n2 3\n")


class TestProfileIO(unittest.TestCase):
    def test_text_format(self):
        profile, s_default = parse_profile_text("# 注释\n3 2 2\n0 1 2\nw=3/2 2 1 0\n")
        self.assertEqual(s_default, 2)
        self.assertEqual(profile.weights, (Fraction(1), Fraction(3, 2)))

    def test_text_header_without_s(self):
        _, s_default = parse_profile_text("2 1\n1 0\n")
        self.assertEqual(s_default, 1)

    def test_text_errors_carry_line(self):
        cases = {
            "3 2\n0 1 2\n0 1\n": 3,
            "3 1\n0 1 1\n": 2,
            "3 1\n0 a 2\n": 2,
            "3 2\n0 1 2\n": 1,
            "3 1\nw=-1 0 1 2\n": 2,
        }
        for text, line in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ProfileParseError) as ctx:
                    parse_profile_text(text)
                self.assertEqual(ctx.exception.line, line)

    def test_preflib(self):
        text = "# NUMBER ALTERNATIVES: 3\n# FILE NAME: toy.soc\n4: 1,2,3\n1: 3,2,1\n"
        profile = parse_preflib(text)
        self.assertEqual(profile.m, 3)
        self.assertEqual(profile.orders, [(0, 1, 2), (2, 1, 0)])
        self.assertEqual(profile.total_weight, 5)
        with self.assertRaises(ProfileParseError) as ctx:
            parse_preflib("# NUMBER ALTERNATIVES: 3\n2: 1,{2,3}\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_symmetric_json_round_trip(self):
        sp = gen_monotonicity_gap(100)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_profile(sp, Path(tmp) / "gap.json", s_default=2)
            loaded, s_default = load_instance(path)
        self.assertIsInstance(loaded, SymmetricProfile)
        self.assertEqual(s_default, 2)
        self.assertEqual(loaded.blocks, sp.blocks)
        self.assertEqual(loaded.slots, sp.slots)
        committee = Committee((0, 1, 50))
        self.assertEqual(score_committee(loaded, committee, 2), score_committee(sp, committee, 2))

    def test_symmetric_cannot_be_text(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(InvalidArgumentError):
                save_profile(gen_core_counterexample(9), Path(tmp) / "cex.txt")

    def test_unknown_suffix_and_missing_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            odd = Path(tmp) / "x.dat"
            odd.write_text("1 1\n0\n", encoding="utf-8")
            with self.assertRaises(InvalidArgumentError):
                load_instance(odd)
            with self.assertRaises(FileNotFoundError):
                load_instance(Path(tmp) / "missing.txt")
            profile, _ = load_instance(odd, "text")
            self.assertEqual(profile.m, 1)

    def test_non_utf8_file_reports_line(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = Path(tmp) / "bad.txt"
            bad.write_bytes(b"3 1\n\xff\xfe 0 1 2\n")
            with self.assertRaises(ProfileParseError) as ctx:
                load_instance(bad)
            self.assertEqual(ctx.exception.line, 2)


class TestRegistry(unittest.TestCase):
    def test_generate_by_name(self):
        profile = generate_instance("random", {"m": 6, "n": 4}, seed=2)
        self.assertEqual(profile, gen_random(6, 4, seed=2))
        sp = generate_instance("monotone-gap", {"m": 200, "a": 0.3, "b": 0.6})
        self.assertEqual(sp.metadata["a"], 0.3)

    def test_errors(self):
        with self.assertRaises(InvalidArgumentError):
            generate_instance("unknown", {"m": 3})
        with self.assertRaises(InvalidArgumentError):
            generate_instance("sborda-bad", {"m": 20, "k": 4})
        with self.assertRaises(InvalidArgumentError):
            generate_instance("spiral", {"resolution": 7})


if __name__ == "__main__":
    unittest.main()
