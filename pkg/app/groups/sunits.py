"""S-units of Q: rationals supported on a finite prime set S."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from app.arith import factorize, is_prime
from app.errors import InvalidInputError
from app.groups.base import GroupContext, ReducedGroup, TorsionSubgroup


class UnitsModP(ReducedGroup[int]):
    """(Z/p)^x written additively."""

    @property
    def identity(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.p - 1

    def add(self, g: int, h: int) -> int:
        return g * h % self.p

    def neg(self, g: int) -> int:
        return pow(g, -1, self.p)

    def mul(self, n: int, g: int) -> int:
        return pow(g, n, self.p)


@dataclass(frozen=True)
class SUnitContext(GroupContext):
    primes: Tuple[int, ...]

    backend = "sunits"

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", primes)
        if any(not is_prime(p) for p in primes):
            raise InvalidInputError(f"S must consist of primes, got {primes}")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise InvalidInputError(f"S must be strictly increasing, got {primes}")

    @property
    def identity(self) -> "SUnit":
        return SUnit(self, 1, (0,) * len(self.primes))

    def add(self, g: "SUnit", h: "SUnit") -> "SUnit":
        return SUnit(self, g.sign * h.sign, tuple(a + b for a, b in zip(g.exponents, h.exponents)))

    def neg(self, g: "SUnit") -> "SUnit":
        return SUnit(self, g.sign, tuple(-a for a in g.exponents))

    def scalar_mul(self, n: int, g: "SUnit") -> "SUnit":
        sign = -1 if g.sign == -1 and n % 2 else 1
        return SUnit(self, sign, tuple(n * a for a in g.exponents))

    def torsion_subgroup(self) -> TorsionSubgroup:
        zero = (0,) * len(self.primes)
        return TorsionSubgroup(((SUnit(self, 1, zero), 1), (SUnit(self, -1, zero), 2)))

    def is_torsion(self, g: "SUnit") -> bool:
        return not any(g.exponents)

    def is_good_place(self, p: int) -> bool:
        return p > 2 and p not in self.primes and is_prime(p)

    def reduced_group(self, p: int) -> UnitsModP:
        return UnitsModP(p)

    def reduce_representation(self, g: "SUnit", p: int) -> int:
        residue = g.sign % p
        for q, e in zip(self.primes, g.exponents):
            residue = residue * pow(q, e, p) % p
        return residue

    def summary(self) -> dict:
        return {"backend": self.backend, "S": list(self.primes)}


@dataclass(frozen=True)
class SUnit:
    context: SUnitContext
    sign: int
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInputError(f"S-unit sign must be +1 or -1, got {self.sign}")
        if len(self.exponents) != len(self.context.primes):
            raise InvalidInputError("exponent vector does not match S")

    @property
    def value(self) -> Fraction:
        result = Fraction(self.sign)
        for q, e in zip(self.context.primes, self.exponents):
            result *= Fraction(q) ** e
        return result

    def __str__(self) -> str:
        return str(self.value)


def su_make(context: SUnitContext, q) -> SUnit:
    q = Fraction(q)
    if q == 0:
        raise InvalidInputError("0 is not an S-unit")
    exponents = dict.fromkeys(context.primes, 0)
    for part, sign in ((q.numerator, 1), (q.denominator, -1)):
        for p, e in factorize(abs(part)).factors:
            if p not in exponents:
                raise InvalidInputError(f"{q} has prime {p} outside S = {list(context.primes)}")
            exponents[p] += sign * e
    return SUnit(context, 1 if q > 0 else -1, tuple(exponents[p] for p in context.primes))


def su_value(g: SUnit) -> Fraction:
    return g.value
