import math
from typing import Iterator, Optional


def printed_decimals(text: str) -> int:
    """Count digits after the decimal point in a printed number"""
    mantissa = text.strip().lower().split("e")[0]
    if "." not in mantissa:
        return 0
    return len(mantissa.split(".", 1)[1])


def last_digit_unit(text: str) -> float:
    """Value of one unit in the last printed digit"""
    return 10.0 ** (-printed_decimals(text))


def format_machine(value: Optional[float]) -> str:
    """Lossless 17-significant-digit rendering"""
    if value is None:
        return ""
    return "%.17g" % value


def format_human(value: Optional[float], decimals: int = 6) -> str:
    """Fixed-point rendering for terminal tables"""
    if value is None:
        return "--"
    if value != 0.0 and abs(value) < 10.0 ** (-decimals):
        return f"{value:.{max(decimals - 3, 1)}e}"
    return f"{value:.{decimals}f}"


def relative_deviation(a: complex, b: complex) -> float:
    """|a - b| / max(1, |b|)"""
    return abs(a - b) / max(1.0, abs(b))


def linear_grid(start: float, end: float, steps: int) -> Iterator[float]:
    """Evenly spaced points, endpoints included exactly"""
    for k in range(steps):
        if k == steps - 1:
            yield end
        else:
            yield start + (end - start) * k / (steps - 1)


def log_grid(start: float, end: float, steps: int) -> Iterator[float]:
    """Logarithmically spaced points, endpoints included exactly"""
    a, b = math.log(start), math.log(end)
    for k in range(steps):
        if k == 0:
            yield start
        elif k == steps - 1:
            yield end
        else:
            yield math.exp(a + (b - a) * k / (steps - 1))
