"""Quadratic residues, modular square roots and element orders."""

from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Optional, Sequence, TypeVar

from app.arith.primes import Factorization, is_prime
from app.errors import InternalConsistencyError, InvalidInputError

T = TypeVar("T")


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise InvalidInputError(f"{p} is not an odd prime")


def legendre_symbol(a: int, p: int) -> int:
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> Optional[int]:
    """Smaller square root of a modulo p (Tonelli-Shanks), None for non-residues."""
    symbol = legendre_symbol(a, p)
    a %= p
    if symbol == 0:
        return 0
    if symbol == -1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def generic_element_order(
    element: T,
    multiply: Callable[[int, T], T],
    identity: T,
    order_bound: Factorization,
) -> int:
    """Order of element in a finite group whose exponent divides order_bound.value.

    Args:
        element: the group element.
        multiply: n, g -> n*g in the group's additive notation.
        identity: the neutral element, compared with ==.
        order_bound: factorization of a multiple of the element's order.
    """
    n = order_bound.value
    if multiply(n, element) != identity:
        raise InternalConsistencyError(f"element order does not divide the bound {n}")
    for q, _ in order_bound.factors:
        while n % q == 0 and multiply(n // q, element) == identity:
            n //= q
    return n


def multiplicative_order(a: int, p: int, fact_p_minus_1: Factorization) -> int:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if fact_p_minus_1.value != p - 1:
        raise InvalidInputError(f"factorization of {fact_p_minus_1.value} given, p - 1 = {p - 1}")
    if a % p == 0:
        raise InvalidInputError(f"{a} is not a unit modulo {p}")
    return generic_element_order(a % p, lambda n, g: pow(g, n, p), 1 % p, fact_p_minus_1)


def rational_square_root(q) -> Optional[Fraction]:
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Least nonnegative x with x = r_i mod m_i for pairwise coprime m_i."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        if gcd(m, mi) != 1:
            raise InvalidInputError(f"moduli {m} and {mi} are not coprime")
        t = (r - x) * pow(m, -1, mi) % mi
        x += m * t
        m *= mi
    return x % m
