"""Deterministic primality and factorisation for desk-scale integers."""

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, List, Tuple

from app.errors import CapExceededError, InternalConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)

# Miller-Rabin with these bases is exact for every n < 3.3 * 10^24.
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MAX_PRIMALITY_INPUT = 1 << 64
TRIAL_DIVISION_LIMIT = 10**6


@dataclass(frozen=True)
class Factorization:
    """value = prod(p**e for p, e in factors), primes ascending."""

    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise InvalidInputError(f"factorization of non-positive value {self.value}")
        product = 1
        previous = 1
        for p, e in self.factors:
            if e < 1 or p <= previous or not is_prime(p):
                raise InvalidInputError(f"malformed factor ({p}, {e}) in factorization of {self.value}")
            previous = p
            product *= p**e
        if product != self.value:
            raise InvalidInputError(f"factors multiply to {product}, not {self.value}")

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divisors(self) -> List[int]:
        """All positive divisors in ascending order."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n >= MAX_PRIMALITY_INPUT:
        raise CapExceededError(f"primality of {n} is outside the 64-bit range handled here")
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int) -> int:
    """One Pollard-rho run with Brent's cycle detection; may return n."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    """A nontrivial divisor of the odd composite n."""
    for c in range(1, 1000):
        d = _brent(n, c)
        if 1 < d < n:
            return d
    raise InternalConsistencyError(f"Pollard rho found no factor of composite {n}")


def _pollard_factors(n: int) -> Iterator[int]:
    if n == 1:
        return
    if is_prime(n):
        yield n
        return
    d = _split(n)
    yield from _pollard_factors(d)
    yield from _pollard_factors(n // d)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise InvalidInputError(f"cannot factorize {n}")
    counts = {}
    remaining = n
    for p in (2, 3):
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
    limit = min(TRIAL_DIVISION_LIMIT, isqrt(remaining))
    p = 5
    step = 2
    while p <= limit:
        if remaining % p == 0:
            while remaining % p == 0:
                counts[p] = counts.get(p, 0) + 1
                remaining //= p
            limit = min(limit, isqrt(remaining))
        p += step
        step = 6 - step
    if remaining > 1:
        if remaining <= TRIAL_DIVISION_LIMIT**2 or is_prime(remaining):
            counts[remaining] = counts.get(remaining, 0) + 1
        else:
            logger.debug("falling back to Pollard rho for cofactor %d of %d", remaining, n)
            for q in _pollard_factors(remaining):
                counts[q] = counts.get(q, 0) + 1
    return Factorization(value=n, factors=tuple(sorted(counts.items())))


def valuation(n: int, l: int) -> int:
    """k with l**k exactly dividing n."""
    if n == 0:
        raise InvalidInputError("valuation of 0 is undefined")
    if l < 2 or not is_prime(l):
        raise InvalidInputError(f"valuation base {l} is not prime")
    n = abs(n)
    k = 0
    while n % l == 0:
        n //= l
        k += 1
    return k


def squarefree_decomposition(n: int) -> Tuple[int, int]:
    """Write n = core * root**2 with core squarefree; the sign stays on core."""
    if n == 0:
        raise InvalidInputError("squarefree decomposition of 0")
    core = -1 if n < 0 else 1
    root = 1
    for p, e in factorize(abs(n)).factors:
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, root
