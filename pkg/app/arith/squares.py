"""Sums of squares used by the rank >= 4 construction."""

from math import isqrt
from typing import Optional, Tuple

from app.errors import InternalConsistencyError, InvalidInputError


def is_three_square_exception(n: int) -> bool:
    """True when n = 4^s (8t + 7), i.e. n is not a sum of three squares."""
    if n <= 0:
        return False
    while n % 4 == 0:
        n //= 4
    return n % 8 == 7


def _two_squares(n: int) -> Optional[Tuple[int, int]]:
    # b descends, so the first hit has b >= c
    b = isqrt(n)
    while 2 * b * b >= n:
        c2 = n - b * b
        c = isqrt(c2)
        if c * c == c2:
            return b, c
        b -= 1
    return None


def three_squares(n: int) -> Optional[Tuple[int, int, int]]:
    """(a, b, c) with a >= b >= c >= 0 and a^2 + b^2 + c^2 = n."""
    if n < 0:
        return None
    for a in range(isqrt(n), -1, -1):
        rest = _two_squares(n - a * a)
        if rest is not None:
            return (a,) + rest
    return None


def gauss_two_k(k: int) -> Tuple[int, int, int]:
    """(a, b, c) >= 0 with 2a^2 + b^2 + c^2 + 1 = 2k."""
    if k < 1:
        raise InvalidInputError(f"gauss_two_k needs k >= 1, got {k}")
    n = 2 * k - 1
    for a in range(isqrt(n // 2), -1, -1):
        rest = _two_squares(n - 2 * a * a)
        if rest is not None:
            return (a,) + rest
    raise InternalConsistencyError(f"no decomposition 2a^2 + b^2 + c^2 = {n}")
