"""实例文件读写：文本格式、JSON 格式（显式 / 对称）、PrefLib 只读导入"""

import json
from collections import Counter
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path
from typing import Any

from election_core import (
    DummyBlock,
    InvalidArgumentError,
    PreferenceProfile,
    ProfileParseError,
    SymmetricProfile,
)
from utils.file_utils import write_json_atomic, write_text_atomic
from utils.logger import setup_logger
from utils.math_utils import format_fraction, parse_fraction

logger = setup_logger(__name__)

Profile = PreferenceProfile | SymmetricProfile

TEXT_SUFFIXES = {".txt", ".prof"}
JSON_SUFFIXES = {".json"}
PREFLIB_SUFFIXES = {".soc", ".soi", ".toc", ".toi"}


def _parse_weight(token: str, line: int) -> Fraction:
    try:
        weight = parse_fraction(token)
    except ValueError as e:
        raise ProfileParseError(str(e), line) from e
    if weight <= 0:
        raise ProfileParseError(f"权重必须为正: {token}", line)
    return weight


def _order_problem(order: list[int], m: int) -> str | None:
    if len(order) != m:
        return f"排名长度 {len(order)} 与 m={m} 不一致"
    repeated = [c for c, count in Counter(order).items() if count > 1]
    if repeated:
        return f"排名中候选人 {repeated[0]} 重复出现"
    if min(order) < 0 or max(order) >= m:
        return f"候选人 id 超出 0..{m - 1}"
    return None


def _check_order(order: list[int], m: int, line: int) -> None:
    problem = _order_problem(order, m)
    if problem:
        raise ProfileParseError(problem, line)


def parse_profile_text(text: str) -> tuple[PreferenceProfile, int]:
    """
    解析文本格式

    首行 `m n s_default`（s_default 可省略，默认 1）；随后 n 行，每行按偏好从高到低列出候选人 id，
    可带前导的 `w=<权重>`。空行与 # 开头的行被忽略。

    Returns:
        (画像, s_default)
    """
    lines = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ProfileParseError("实例文件为空")
    head_no, head = lines[0]
    if len(head) not in (2, 3):
        raise ProfileParseError("首行必须是 `m n s_default`", head_no)
    try:
        m, n, *rest = (int(x) for x in head)
    except ValueError as e:
        raise ProfileParseError(f"首行包含非整数: {' '.join(head)}", head_no) from e
    s_default = rest[0] if rest else 1
    if m < 1 or n < 1 or s_default < 1:
        raise ProfileParseError("m、n、s_default 都必须 ≥ 1", head_no)
    body = lines[1:]
    if len(body) != n:
        raise ProfileParseError(f"声明了 {n} 个选民，实际 {len(body)} 行", head_no)

    orders: list[list[int]] = []
    weights: list[Fraction] = []
    for no, tokens in body:
        weight = Fraction(1)
        if tokens and tokens[0].startswith("w="):
            weight = _parse_weight(tokens[0][2:], no)
            tokens = tokens[1:]
        try:
            order = [int(t) for t in tokens]
        except ValueError as e:
            raise ProfileParseError(f"候选人 id 必须是整数: {' '.join(tokens)}", no) from e
        _check_order(order, m, no)
        orders.append(order)
        weights.append(weight)
    return PreferenceProfile.from_orders(m, orders, weights), s_default


def format_profile_text(profile: PreferenceProfile, s_default: int = 1) -> str:
    lines = [f"{profile.m} {profile.n} {s_default}"]
    unit = profile.has_unit_weights()
    for order, weight in zip(profile.orders, profile.weights, strict=True):
        ids = " ".join(str(c) for c in order)
        lines.append(ids if unit else f"w={format_fraction(weight)} {ids}")
    return "\n".join(lines) + "\n"


def parse_preflib(text: str) -> PreferenceProfile:
    """
    读取 PrefLib 严格完全序（soc）文件

    `# NUMBER ALTERNATIVES: m` 之类的注释头只用来取 m；数据行为 `count: a,b,c`，
    候选人编号从 1 开始，count 作为选票权重。带 `{}` 并列的行被拒绝。
    """
    m: int | None = None
    orders: list[list[int]] = []
    weights: list[int] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line.lstrip("# ").partition(":")
            if key.strip().upper() == "NUMBER ALTERNATIVES":
                m = int(value)
            continue
        if ":" not in line:
            raise ProfileParseError("数据行必须是 `count: a,b,c`", no)
        count_text, body = line.split(":", 1)
        if "{" in body:
            raise ProfileParseError("只支持严格全序，不支持并列", no)
        try:
            count = int(count_text)
            order = [int(t) - 1 for t in body.split(",")]
        except ValueError as e:
            raise ProfileParseError(f"无法解析: {line!r}", no) from e
        if count <= 0:
            raise ProfileParseError(f"选票计数必须为正: {count}", no)
        if m is None:
            m = len(order)
        _check_order(order, m, no)
        orders.append(order)
        weights.append(count)
    if not orders or m is None:
        raise ProfileParseError("PrefLib 文件中没有选票")
    logger.info(f"读取 PrefLib 画像：m={m}，{len(orders)} 种排名，共 {sum(weights)} 张选票")
    return PreferenceProfile.from_orders(m, orders, weights)


def profile_to_dict(profile: Profile, s_default: int = 1) -> dict[str, Any]:
    """显式或对称画像 → 可 JSON 序列化的 dict"""
    if isinstance(profile, SymmetricProfile):
        groups = [
            {
                "weight": format_fraction(w),
                "placed": {str(c): r for c, r in profile.placed_map(g).items()},
            }
            for g, w in enumerate(profile.weights)
        ]
        return {
            "kind": "symmetric",
            "m": profile.m,
            "s": s_default,
            "critical": list(profile.critical),
            "groups": groups,
            "blocks": [{"name": b.name, "members": list(b.members)} for b in profile.blocks],
            "slots": None if profile.slots is None else [[list(map(list, iv)) for iv in per] for per in profile.slots],
            "metadata": profile.metadata,
        }
    return {
        "kind": "explicit",
        "m": profile.m,
        "s": s_default,
        "voters": [list(o) for o in profile.orders],
        "weights": [format_fraction(w) for w in profile.weights],
    }


def _weights_from(values: Iterable[Any]) -> list[Fraction]:
    out = []
    for v in values:
        try:
            out.append(parse_fraction(str(v)))
        except ValueError as e:
            raise ProfileParseError(str(e)) from e
    return out


def profile_from_dict(data: dict[str, Any]) -> tuple[Profile, int]:
    """dict → (画像, s_default)；缺少 kind 时按是否含 groups 判断"""
    try:
        kind = data.get("kind") or ("symmetric" if "groups" in data else "explicit")
        m = int(data["m"])
        s_default = int(data.get("s", 1))
        if kind == "symmetric":
            critical = [int(c) for c in data["critical"]]
            groups = []
            for g in data["groups"]:
                (weight,) = _weights_from([g["weight"]])
                groups.append((weight, {int(c): int(r) for c, r in g["placed"].items()}))
            blocks = [DummyBlock(b["name"], tuple(int(c) for c in b["members"])) for b in data.get("blocks") or ()]
            profile: Profile = SymmetricProfile.from_groups(
                m, critical, groups, blocks=blocks, slots=data.get("slots"), metadata=data.get("metadata")
            )
            return profile, s_default
        voters = [[int(c) for c in v] for v in data["voters"]]
        for i, order in enumerate(voters):
            problem = _order_problem(order, m)
            if problem:
                raise ProfileParseError(f"第 {i + 1} 个选民: {problem}")
        weights = _weights_from(data["weights"]) if data.get("weights") else None
        return PreferenceProfile.from_orders(m, voters, weights), s_default
    except (KeyError, TypeError, ValueError) as e:
        raise ProfileParseError(f"JSON 实例缺少字段或类型错误: {e}") from e
    except InvalidArgumentError as e:
        raise ProfileParseError(f"JSON 实例不满足画像约束: {e}") from e


def _detect_format(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    suffix = path.suffix.lower()
    if suffix in JSON_SUFFIXES:
        return "json"
    if suffix in PREFLIB_SUFFIXES:
        return "preflib"
    if suffix in TEXT_SUFFIXES:
        return "text"
    raise InvalidArgumentError(f"无法从后缀 {suffix!r} 推断实例格式，请显式指定 text / json / preflib")


def load_instance(path: Path, fmt: str | None = None) -> tuple[Profile, int]:
    """
    读取实例文件

    Args:
        path: 文件路径
        fmt: text / json / preflib，缺省按后缀推断

    Returns:
        (画像, 文件中记录的默认 s；PrefLib 为 1)
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"文件不存在: {path}")
    fmt = _detect_format(path, fmt)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ProfileParseError(f"文件不是有效的 UTF-8: {e.reason}", data[: e.start].count(b"\n") + 1) from e
    if fmt == "text":
        return parse_profile_text(text)
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ProfileParseError(f"JSON 解析失败: {e.msg}", e.lineno) from e
        return profile_from_dict(data)
    if fmt == "preflib":
        return parse_preflib(text), 1
    raise InvalidArgumentError(f"未知的实例格式: {fmt}")


def save_profile(profile: Profile, path: Path, fmt: str | None = None, s_default: int = 1) -> Path:
    """
    原子写入实例文件；对称画像只能写 JSON，PrefLib 只读

    Returns:
        写入的路径
    """
    path = Path(path)
    fmt = _detect_format(path, fmt)
    if fmt == "preflib":
        raise InvalidArgumentError("PrefLib 格式只支持读取")
    if fmt == "text":
        if isinstance(profile, SymmetricProfile):
            raise InvalidArgumentError("对称画像只能保存为 JSON")
        out = write_text_atomic(path, format_profile_text(profile, s_default))
    else:
        out = write_json_atomic(path, profile_to_dict(profile, s_default))
    logger.debug(f"实例已写入 {out}")
    return out
