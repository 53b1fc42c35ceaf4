"""数学工具函数模块"""

import math
from collections.abc import Iterable
from fractions import Fraction

__all__ = [
    "comb",
    "as_fraction",
    "format_fraction",
    "parse_fraction",
    "common_denominator",
    "scale_to_integers",
    "ceil_sqrt_ratio",
]


def comb(n: int, k: int) -> int:
    """
    组合数 C(n, k)，越界时返回 0（math.comb 对负数会抛异常）

    Args:
        n: 总数
        k: 选取数

    Returns:
        组合数
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def as_fraction(value: int | float | str | Fraction) -> Fraction:
    """把 int / float / "p/q" / 十进制字符串统一转成 Fraction；float 按十进制字面值转换"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def format_fraction(value: Fraction) -> str:
    """Fraction → "p/q"（整数输出 "p"）"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """
    解析 "p/q"、整数或十进制字符串

    Args:
        text: 输入字符串

    Returns:
        Fraction 对象
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"无法解析有理数: {text!r}") from e


def common_denominator(values: Iterable[Fraction]) -> int:
    """一组有理数的最小公分母"""
    lcm = 1
    for v in values:
        lcm = math.lcm(lcm, Fraction(v).denominator)
    return lcm


def scale_to_integers(values: Iterable[Fraction]) -> tuple[list[int], int]:
    """
    把有理数权重放大为整数

    Returns:
        (整数列表, 放大倍数 L)，满足 values[i] == ints[i] / L
    """
    values = [Fraction(v) for v in values]
    lcm = common_denominator(values)
    return [int(v * lcm) for v in values], lcm


def ceil_sqrt_ratio(k: int, s: int) -> int:
    """返回 ⌈k/√s⌉，全程整数运算（避免浮点 sqrt 在完全平方处的误差）"""
    if k <= 0:
        return 0
    target = k * k
    c = math.isqrt(target // s)
    while c * c * s < target:
        c += 1
    while c > 0 and (c - 1) * (c - 1) * s >= target:
        c -= 1
    return c
