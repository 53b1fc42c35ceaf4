import logging
import os
from typing import Literal

from pydantic import BaseModel, Field, field_validator

from election_core.constant import DEFAULT_ENUM_CAP


class RuntimeSettings(BaseModel):
    """运行期设置：默认值来自环境变量（.env 由 CLI 启动时加载）"""

    seed: int | None = Field(default=None, ge=0, description="默认随机种子（MWELECT_SEED）")
    log_level: str = Field(default="INFO", description="日志级别（MWELECT_LOG_LEVEL）")
    enum_cap: int = Field(default=DEFAULT_ENUM_CAP, ge=1, description="穷举上限（MWELECT_ENUM_CAP）")
    lp_solver: Literal["auto", "simplex", "highs"] = Field(default="auto", description="LP 求解器（MWELECT_LP_SOLVER）")
    workers: int = Field(default=1, ge=1, description="bench 的并行进程数（MWELECT_WORKERS）")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        name = v.upper()
        if not isinstance(logging.getLevelName(name), int):
            raise ValueError(f"未知的日志级别: {v}")
        return name

    @property
    def level(self) -> int:
        return logging.getLevelName(self.log_level)

    @classmethod
    def from_env(cls) -> "RuntimeSettings":
        """读取 MWELECT_* 环境变量；空字符串按未设置处理"""
        env = {
            "seed": os.getenv("MWELECT_SEED"),
            "log_level": os.getenv("MWELECT_LOG_LEVEL"),
            "enum_cap": os.getenv("MWELECT_ENUM_CAP"),
            "lp_solver": os.getenv("MWELECT_LP_SOLVER"),
            "workers": os.getenv("MWELECT_WORKERS"),
        }
        return cls(**{k: v for k, v in env.items() if v})
