import logging
import os
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _level_from_env() -> int:
    name = os.getenv("MWELECT_LOG_LEVEL", "INFO").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def setup_logger(name: str = "committee_select", level: int | None = None, log_file: str | None = None) -> logging.Logger:
    """
    统一的日志配置函数

    Args:
        name: Logger名称，一般传入模块的 __name__
        level: 日志级别，缺省时读取环境变量 MWELECT_LOG_LEVEL
        log_file: 可选的日志文件路径

    Returns:
        配置好的Logger实例
    """
    logger = logging.getLogger(name)
    logger.setLevel(level if level is not None else _level_from_env())

    # 防止重复添加handler
    if logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        attach_file_handler(logger, log_file)

    return logger


def attach_file_handler(logger: logging.Logger, log_file: str) -> None:
    """给已有logger追加文件输出（CLI 的 --log-file 使用）"""
    for handler in logger.handlers:
        if isinstance(handler, logging.FileHandler) and handler.baseFilename == os.path.abspath(log_file):
            return
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(file_handler)


def set_global_level(level: int) -> None:
    """调整所有已创建logger的级别"""
    for logger in (logging.getLogger(n) for n in list(logging.root.manager.loggerDict)):
        if logger.handlers:
            logger.setLevel(level)


def attach_global_file_handler(log_file: str) -> None:
    """给所有已创建的logger追加同一个日志文件"""
    for logger in (logging.getLogger(n) for n in list(logging.root.manager.loggerDict)):
        if logger.handlers:
            attach_file_handler(logger, log_file)
