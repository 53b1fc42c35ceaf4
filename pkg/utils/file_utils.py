# utils/file_utils.py
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import yaml


def resolve_path(base_file: Path, relative_path: str) -> Path:
    """解析相对路径为绝对路径（相对于 base_file 所在目录）"""
    path = Path(relative_path)
    return path if path.is_absolute() else (base_file.parent / path).resolve()


def load_file_content(file_path: Path) -> Any:
    """读取 .json / .yaml / .yml 文件内容"""
    if not file_path.exists():
        raise FileNotFoundError(f"文件不存在: {file_path}")

    suffix = file_path.suffix.lower()
    content = file_path.read_text(encoding="utf-8")

    if suffix in [".yaml", ".yml"]:
        return yaml.safe_load(content)
    elif suffix == ".json":
        return json.loads(content)
    else:
        raise ValueError("仅支持 .json / .yaml / .yml")


def write_text_atomic(file_path: Path, text: str) -> Path:
    """
    原子写入文本文件：先写临时文件，再替换目标文件

    Args:
        file_path: 目标路径
        text: 文件内容

    Returns:
        写入的路径
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{file_path.name}.", dir=file_path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        Path(tmp_name).replace(file_path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return file_path


def write_json_atomic(file_path: Path, data: Any) -> Path:
    return write_text_atomic(file_path, json.dumps(data, ensure_ascii=False, indent=2) + "\n")
