"""工具函数模块"""

from .file_utils import load_file_content, resolve_path, write_json_atomic, write_text_atomic
from .math_utils import *

__all__ = [
    "resolve_path",
    "load_file_content",
    "write_text_atomic",
    "write_json_atomic",
]

# 动态添加 math_utils 的 __all__ 到当前模块的 __all__
from . import math_utils

__all__.extend(math_utils.__all__)
