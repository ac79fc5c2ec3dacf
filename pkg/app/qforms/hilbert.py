"""Hilbert symbols over Q, by formula and by a finite-level search."""

from typing import Optional, Tuple

from app.arith import legendre_symbol, squarefree_decomposition
from app.errors import InvalidInputError
from app.qforms.places import Place


def split_valuation(n: int, p: int) -> Tuple[int, int]:
    """(alpha, u) with n = p^alpha * u and p not dividing u."""
    alpha = 0
    while n % p == 0:
        n //= p
        alpha += 1
    return alpha, n


def _epsilon(u: int) -> int:
    return 0 if u % 4 == 1 else 1


def _omega(u: int) -> int:
    return 0 if u % 8 in (1, 7) else 1


def hilbert_symbol(a: int, b: int, v: Place) -> int:
    if a == 0 or b == 0:
        raise InvalidInputError("Hilbert symbol of zero")
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, u = split_valuation(a, p)
    beta, w = split_valuation(b, p)
    if p == 2:
        exponent = _epsilon(u) * _epsilon(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre_symbol(u, p)
    if alpha % 2:
        sign *= legendre_symbol(w, p)
    return sign


def hilbert_symbol_bruteforce(a: int, b: int, p: int, k: Optional[int] = None) -> int:
    """Search for a primitive solution of z^2 = a x^2 + b y^2 modulo p^k.

    a and b are first replaced by their squarefree parts, which keeps the
    answer exact at k = 3 for odd p and k = 6 for p = 2.
    """
    if a == 0 or b == 0:
        raise InvalidInputError("Hilbert symbol of zero")
    a, _ = squarefree_decomposition(a)
    b, _ = squarefree_decomposition(b)
    if k is None:
        k = 6 if p == 2 else 3
    m = p**k
    any_square = set()
    unit_square = set()
    for z in range(m):
        s = z * z % m
        any_square.add(s)
        if z % p:
            unit_square.add(s)
    for x in range(m):
        ax = a * x * x
        for y in range(m):
            value = (ax + b * y * y) % m
            if x % p or y % p:
                if value in any_square:
                    return 1
            elif value in unit_square:
                return 1
    return -1
