"""按名字构造实例：CLI 的 gen 命令与实验清单共用"""

from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from election_core import InvalidArgumentError, PreferenceProfile, SymmetricProfile
from election_core.constant import GENERATOR_NAMES

from .constructions import gen_core_counterexample, gen_monotonicity_gap, gen_sborda_bad
from .cover import DEFAULT_COPIES_CAP, DEFAULT_COVER_BUDGET, gen_from_cover, load_cover
from .random_gen import gen_all_permutations, gen_random
from .spiral import SpiralParams, gen_spiral

Profile = PreferenceProfile | SymmetricProfile


def _require(params: Mapping[str, Any], *names: str) -> list[Any]:
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise InvalidArgumentError(f"缺少生成参数: {', '.join(missing)}")
    return [params[n] for n in names]


def _random(params: Mapping[str, Any], seed: int | None) -> Profile:
    m, n = _require(params, "m", "n")
    return gen_random(int(m), int(n), params.get("k"), seed)


def _allperm(params: Mapping[str, Any], seed: int | None) -> Profile:
    (m,) = _require(params, "m")
    return gen_all_permutations(int(m))


def _spiral(params: Mapping[str, Any], seed: int | None) -> Profile:
    fields = {k: v for k, v in params.items() if k in SpiralParams.model_fields and v is not None}
    try:
        spiral_params = SpiralParams(**fields)
    except ValidationError as e:
        raise InvalidArgumentError(f"螺旋参数不合法: {e.errors()[0]['msg']}") from e
    return gen_spiral(spiral_params)


def _monotone_gap(params: Mapping[str, Any], seed: int | None) -> Profile:
    (m,) = _require(params, "m")
    extra = {k: float(params[k]) for k in ("a", "b") if params.get(k) is not None}
    return gen_monotonicity_gap(int(m), **extra)


def _core_cex(params: Mapping[str, Any], seed: int | None) -> Profile:
    (m,) = _require(params, "m")
    return gen_core_counterexample(int(m))


def _sborda_bad(params: Mapping[str, Any], seed: int | None) -> Profile:
    m, k, s = _require(params, "m", "k", "s")
    return gen_sborda_bad(int(m), int(k), int(s))


def _from_cover(params: Mapping[str, Any], seed: int | None) -> Profile:
    cover_path, eps = _require(params, "cover", "eps")
    return gen_from_cover(
        load_cover(Path(cover_path)),
        float(eps),
        seed,
        copies_cap=int(params.get("copies_cap") or DEFAULT_COPIES_CAP),
        budget=int(params.get("budget") or DEFAULT_COVER_BUDGET),
    )


GENERATORS: dict[str, Callable[[Mapping[str, Any], int | None], Profile]] = {
    "random": _random,
    "allperm": _allperm,
    "spiral": _spiral,
    "monotone-gap": _monotone_gap,
    "core-cex": _core_cex,
    "sborda-bad": _sborda_bad,
    "from-cover": _from_cover,
}


def generate_instance(kind: str, params: Mapping[str, Any] | None = None, seed: int | None = None) -> Profile:
    """
    按生成器名字与参数构造实例

    Args:
        kind: GENERATOR_NAMES 之一
        params: 生成参数（m、n、k、s、a、b、cover、eps 等，按生成器取用）
        seed: 随机种子（只对随机生成器有意义）

    Returns:
        显式或对称画像
    """
    if kind not in GENERATOR_NAMES:
        raise InvalidArgumentError(f"未知生成器 {kind!r}，可选 {list(GENERATOR_NAMES)}")
    return GENERATORS[kind](params or {}, seed)
