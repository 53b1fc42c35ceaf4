# election_core/exceptions.py
class ElectionError(Exception):
    """项目基础异常类"""

    pass


class InvalidArgumentError(ElectionError):
    """参数或前置条件不满足（s > k、k > m、委员会非法等）"""

    pass


class ProfileParseError(ElectionError):
    """实例文件格式错误"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"第 {line} 行: {message}" if line is not None else message)


class ManifestValidationError(ElectionError):
    """实验清单校验失败"""

    pass


class EnumerationCapError(ElectionError):
    """穷举规模超过上限"""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"需要枚举 {count} 个委员会，超过上限 {cap}")


class BudgetExceededError(ElectionError):
    """生成器物化规模超过预算"""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"需要物化 {required} 条选票，超过预算 {budget}")


class SolverError(ElectionError):
    """线性规划求解失败（迭代上限、不可行、无界）"""

    pass


class VerificationError(ElectionError):
    """性质校验未通过"""

    pass
