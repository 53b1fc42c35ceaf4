from .constructions import gen_core_counterexample, gen_monotonicity_gap, gen_sborda_bad
from .cover import CoverInstance, cover_dimensions, format_cover, gen_from_cover, load_cover, parse_cover
from .io import (
    format_profile_text,
    load_instance,
    parse_preflib,
    parse_profile_text,
    profile_from_dict,
    profile_to_dict,
    save_profile,
)
from .random_gen import concentration_voter_count, gen_all_permutations, gen_random
from .registry import GENERATORS, generate_instance
from .spiral import SpiralParams, continuum_ratio, gen_spiral, spiral_summary, window_boundaries

__all__ = [
    "GENERATORS",
    "CoverInstance",
    "SpiralParams",
    "concentration_voter_count",
    "continuum_ratio",
    "cover_dimensions",
    "format_cover",
    "format_profile_text",
    "gen_all_permutations",
    "gen_core_counterexample",
    "gen_from_cover",
    "gen_monotonicity_gap",
    "gen_random",
    "gen_sborda_bad",
    "gen_spiral",
    "generate_instance",
    "load_cover",
    "load_instance",
    "parse_cover",
    "parse_preflib",
    "parse_profile_text",
    "profile_from_dict",
    "profile_to_dict",
    "save_profile",
    "spiral_summary",
    "window_boundaries",
]
