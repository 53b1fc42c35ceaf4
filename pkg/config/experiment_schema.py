from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from election_core import ManifestValidationError
from election_core.constant import GENERATOR_NAMES, MANIFEST_SCHEMA_VERSION, RULE_NAMES
from utils.file_utils import load_file_content, resolve_path

KValue = int | Literal["auto"]


class InstanceSpec(BaseModel):
    """一个实例：生成器 + 参数 + 种子，或者一个实例文件"""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(description="实例标识，写入报告的 instance_id 列")
    generator: str | None = Field(default=None, description=f"生成器名，可选 {', '.join(GENERATOR_NAMES)}")
    params: dict[str, Any] = Field(default={}, description="生成参数（m、n、k、s、a、b、cover、eps 等）")
    seed: int | None = Field(default=None, ge=0, description="生成器种子，缺省用清单的 seed")
    path: str | None = Field(default=None, description="实例文件路径（与 generator 二选一）")
    k: list[KValue] | None = Field(default=None, description="覆盖清单级的 k 列表；auto 取实例 metadata 中的 k")
    s: list[int] | None = Field(default=None, description="覆盖清单级的 s 列表")

    @field_validator("generator")
    @classmethod
    def validate_generator(cls, v: str | None) -> str | None:
        if v is not None and v not in GENERATOR_NAMES:
            raise ValueError(f"generator 必须是以下之一: {', '.join(GENERATOR_NAMES)}")
        return v

    @model_validator(mode="after")
    def check_source(self) -> "InstanceSpec":
        if (self.generator is None) == (self.path is None):
            raise ValueError(f"实例 {self.id}: generator 与 path 必须恰好给出一个")
        return self

    @property
    def declared_m(self) -> int | None:
        m = self.params.get("m")
        return int(m) if m is not None else None


class OutputSpec(BaseModel):
    csv: str | None = Field(default=None, description="CSV 输出路径")
    json_path: str | None = Field(default=None, alias="json", description="JSON 输出路径")


class ExperimentManifest(BaseModel):
    """实验清单（版本化）"""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    schema_version: Literal[1] = Field(alias="schema", description="清单格式版本")
    name: str = Field(default="experiment", description="实验名")
    instances: list[InstanceSpec] = Field(min_length=1, description="实例列表")
    rules: list[str] = Field(min_length=1, description="要运行的规则")
    k: list[KValue] = Field(default=["auto"], min_length=1, description="委员会大小列表")
    s: list[int] = Field(default=[1], min_length=1, description="s 列表")
    seed: int = Field(default=0, ge=0, description="实例与规则的基础种子")
    exact: bool | None = Field(default=None, description="精确模式；null 时 m < 2000 自动开启")
    workers: int = Field(default=1, ge=1, description="并行进程数")
    lp_seeds: int = Field(default=1, ge=1, description="lp-round 的舍入种子数")
    trials: int = Field(default=1, ge=1, description="random 规则的抽样次数")
    with_opt: bool = Field(default=False, description="枚举规模允许时是否附带 Opt")
    output: OutputSpec = Field(default_factory=OutputSpec, description="输出路径")

    @field_validator("rules")
    @classmethod
    def validate_rules(cls, v: list[str]) -> list[str]:
        unknown = [r for r in v if r not in RULE_NAMES]
        if unknown:
            raise ValueError(f"未知规则 {unknown}，可选 {', '.join(RULE_NAMES)}")
        return v

    @field_validator("s")
    @classmethod
    def validate_s(cls, v: list[int]) -> list[int]:
        if any(x < 1 for x in v):
            raise ValueError("s 必须 ≥ 1")
        return v

    @model_validator(mode="after")
    def check_k_within_m(self) -> "ExperimentManifest":
        for spec in self.instances:
            m = spec.declared_m
            ks = spec.k if spec.k is not None else self.k
            for k in ks:
                if k == "auto":
                    continue
                if k < 1:
                    raise ValueError(f"实例 {spec.id}: k 必须 ≥ 1")
                if m is not None and k > m:
                    raise ValueError(f"实例 {spec.id}: k={k} 超过 m={m}")
        return self

    def pairs(self, spec: InstanceSpec, metadata_k: int | None) -> list[tuple[int, int]]:
        """实例上要跑的 (k, s) 组合；s > k 的组合被跳过"""
        out = []
        for k in spec.k if spec.k is not None else self.k:
            if k == "auto":
                if metadata_k is None:
                    raise ManifestValidationError(f"实例 {spec.id} 没有 metadata k，不能使用 k=auto")
                k = metadata_k
            for s in spec.s if spec.s is not None else self.s:
                if s <= k:
                    out.append((int(k), int(s)))
        return out


def load_manifest(path: Path) -> ExperimentManifest:
    """
    读取并校验实验清单（.json / .yaml / .yml）

    实例文件与 from-cover 的 cover 路径按清单所在目录解析。

    Raises:
        ManifestValidationError: 清单内容不合法
    """
    path = Path(path)
    try:
        data = load_file_content(path)
    except (ValueError, yaml.YAMLError) as e:
        raise ManifestValidationError(f"清单无法解析: {e}") from e
    if not isinstance(data, dict):
        raise ManifestValidationError("清单顶层必须是对象")
    if data.get("schema") != MANIFEST_SCHEMA_VERSION:
        raise ManifestValidationError(f"不支持的清单版本 {data.get('schema')!r}，当前版本 {MANIFEST_SCHEMA_VERSION}")
    try:
        manifest = ExperimentManifest.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ManifestValidationError(f"清单校验失败（{where}）: {first['msg']}") from e

    for spec in manifest.instances:
        if spec.path is not None:
            spec.path = str(resolve_path(path, spec.path))
        if spec.params.get("cover") is not None:
            spec.params["cover"] = str(resolve_path(path, str(spec.params["cover"])))
    return manifest
