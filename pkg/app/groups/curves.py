"""Elliptic curves y^2 = x^3 + A x + B over Q and their reductions."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt, lcm
from typing import List, Optional, Tuple

from app.arith import factorize, is_prime
from app.config import get_settings
from app.errors import BadPlaceError, CapExceededError, InternalConsistencyError, InvalidInputError
from app.groups.base import GroupContext, ReducedGroup, TorsionSubgroup

logger = logging.getLogger(__name__)

AffinePoint = Optional[Tuple[int, int]]  # None is the point at infinity mod p
GCD_CHECK_PRIMES = 8


class CurveModP(ReducedGroup[AffinePoint]):
    """E(F_p) for a prime of good reduction."""

    def __init__(self, A: int, B: int, p: int):
        super().__init__(p)
        self.A = A % p
        self.B = B % p

    @property
    def identity(self) -> AffinePoint:
        return None

    @cached_property
    def order(self) -> int:
        return _count_points(self.A, self.B, self.p)

    def neg(self, g: AffinePoint) -> AffinePoint:
        if g is None:
            return None
        return (g[0], -g[1] % self.p)

    def add(self, g: AffinePoint, h: AffinePoint) -> AffinePoint:
        if g is None:
            return h
        if h is None:
            return g
        p = self.p
        (x1, y1), (x2, y2) = g, h
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            slope = (3 * x1 * x1 + self.A) * pow(2 * y1, -1, p) % p
        else:
            slope = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (slope * slope - x1 - x2) % p
        return (x3, (slope * (x1 - x3) - y1) % p)

    def contains(self, g: AffinePoint) -> bool:
        if g is None:
            return True
        x, y = g
        return (y * y - (x * x * x + self.A * x + self.B)) % self.p == 0


@lru_cache(maxsize=65536)
def _count_points(A: int, B: int, p: int) -> int:
    # p + 1 + sum of Legendre symbols of x^3 + Ax + B
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, (p + 1) // 2):
        chi[y * y % p] = 1
    total = p + 1
    for x in range(p):
        total += chi[(x * x * x + A * x + B) % p]
    return total


@dataclass(frozen=True)
class Curve(GroupContext):
    A: int
    B: int

    backend = "elliptic"

    def __post_init__(self):
        object.__setattr__(self, "A", int(self.A))
        object.__setattr__(self, "B", int(self.B))
        if self.discriminant == 0:
            raise InvalidInputError(f"y^2 = x^3 + {self.A}x + {self.B} is singular")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    @property
    def identity(self) -> "CurvePoint":
        return CurvePoint(self, 0, 1, 0)

    def point(self, x, y) -> "CurvePoint":
        """The projective point for the affine rational point (x, y)."""
        x, y = Fraction(x), Fraction(y)
        scale = lcm(x.denominator, y.denominator)
        return CurvePoint(self, int(x * scale), int(y * scale), scale)

    def contains_affine(self, x: Fraction, y: Fraction) -> bool:
        return y * y == x**3 + self.A * x + self.B

    def neg(self, g: "CurvePoint") -> "CurvePoint":
        if g.is_infinity:
            return g
        return CurvePoint(self, g.X, -g.Y, g.Z)

    def add(self, g: "CurvePoint", h: "CurvePoint") -> "CurvePoint":
        if g.is_infinity:
            return h
        if h.is_infinity:
            return g
        (x1, y1), (x2, y2) = g.affine, h.affine
        if x1 == x2:
            if y1 + y2 == 0:
                return self.identity
            slope = (3 * x1 * x1 + self.A) / (2 * y1)
        else:
            slope = (y2 - y1) / (x2 - x1)
        x3 = slope * slope - x1 - x2
        return self.point(x3, slope * (x1 - x3) - y1)

    @cached_property
    def _torsion(self) -> TorsionSubgroup:
        return self._compute_torsion(get_settings().torsion_max_order)

    def torsion_subgroup(self) -> TorsionSubgroup:
        return self._torsion

    def is_torsion(self, g: "CurvePoint") -> bool:
        return g in self._torsion

    def is_good_place(self, p: int) -> bool:
        return p > 3 and self.discriminant % p != 0 and is_prime(p)

    def place_cap(self) -> int:
        return get_settings().point_count_cap

    def reduced_group(self, p: int) -> CurveModP:
        cap = self.place_cap()
        if p > cap:
            raise CapExceededError(f"point counting at p = {p} exceeds the cap {cap}")
        return CurveModP(self.A, self.B, p)

    def reduce_representation(self, g: "CurvePoint", p: int) -> AffinePoint:
        if g.Z % p == 0:
            return None
        inverse = pow(g.Z, -1, p)
        return (g.X * inverse % p, g.Y * inverse % p)

    def summary(self) -> dict:
        return {"backend": self.backend, "A": self.A, "B": self.B}

    def _integral_points_with_y(self, y: int) -> List[int]:
        """Integer roots x of x^3 + A x + (B - y^2)."""
        constant = self.B - y * y
        if constant == 0:
            candidates = {0}
            if -self.A >= 0 and isqrt(-self.A) ** 2 == -self.A:
                candidates.update({isqrt(-self.A), -isqrt(-self.A)})
        else:
            divisors = factorize(abs(constant)).divisors()
            candidates = set(divisors) | {-d for d in divisors}
        return sorted(x for x in candidates if x**3 + self.A * x + constant == 0)

    def _finite_order(self, g: "CurvePoint", max_order: int) -> Optional[int]:
        multiple = g
        for n in range(1, max_order + 1):
            if multiple.is_infinity:
                return n
            # torsion points have integral coordinates
            if multiple.Z != 1:
                return None
            multiple = self.add(multiple, g)
        return None

    def _compute_torsion(self, max_order: int) -> TorsionSubgroup:
        reduced_disc = abs(4 * self.A**3 + 27 * self.B**2)
        ys = [1]
        for p, e in factorize(reduced_disc).factors:
            ys = [y * p**k for y in ys for k in range(e // 2 + 1)]
        found = {self.identity: 1}
        for y in [0] + sorted(ys):
            for x in self._integral_points_with_y(y):
                for candidate in {self.point(x, y), self.point(x, -y)}:
                    order = self._finite_order(candidate, max_order)
                    if order is not None:
                        found[candidate] = order
        elements = tuple(sorted(found.items(), key=lambda item: (item[1], item[0].X, item[0].Y, item[0].Z)))
        torsion = TorsionSubgroup(elements)
        for g, _ in elements:
            for h, _ in elements:
                if self.add(g, h) not in torsion:
                    raise InternalConsistencyError(f"torsion candidates of {self.summary()} are not closed")
        bound = self._point_count_gcd()
        if bound % torsion.size:
            raise InternalConsistencyError(
                f"torsion of size {torsion.size} does not divide gcd of point counts {bound}"
            )
        logger.debug("torsion of %s has %d elements (point-count gcd %d)", self.summary(), torsion.size, bound)
        return torsion

    def _point_count_gcd(self) -> int:
        bound = 0
        p = 5
        checked = 0
        while checked < GCD_CHECK_PRIMES:
            if self.is_good_place(p):
                bound = gcd(bound, _count_points(self.A % p, self.B % p, p))
                checked += 1
            p += 2
        return bound


@dataclass(frozen=True)
class CurvePoint:
    """Primitive projective triple (X : Y : Z), Z >= 0, for the point (X/Z, Y/Z)."""

    curve: Curve
    X: int
    Y: int
    Z: int

    def __post_init__(self):
        X, Y, Z = int(self.X), int(self.Y), int(self.Z)
        if Z < 0:
            X, Y, Z = -X, -Y, -Z
        g = gcd(X, Y, Z)
        if g == 0:
            raise InvalidInputError("(0 : 0 : 0) is not a projective point")
        X, Y, Z = X // g, Y // g, Z // g
        if Z == 0:
            X, Y = 0, 1
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Z", Z)
        A, B = self.curve.A, self.curve.B
        if Y * Y * Z != X**3 + A * X * Z * Z + B * Z**3:
            raise InvalidInputError(f"({X} : {Y} : {Z}) is not on {self.curve.summary()}")

    @property
    def context(self) -> Curve:
        return self.curve

    @property
    def is_infinity(self) -> bool:
        return self.Z == 0

    @property
    def affine(self) -> Tuple[Fraction, Fraction]:
        if self.is_infinity:
            raise InvalidInputError("the point at infinity has no affine coordinates")
        return Fraction(self.X, self.Z), Fraction(self.Y, self.Z)

    def __str__(self) -> str:
        if self.is_infinity:
            return "infinity"
        x, y = self.affine
        return f"({x}, {y})"


def point_count_mod_p(curve: Curve, p: int) -> int:
    if not curve.is_good_place(p):
        raise BadPlaceError(f"{p} is not a good prime for {curve.summary()}")
    cap = get_settings().point_count_cap
    if p > cap:
        raise CapExceededError(f"point counting at p = {p} exceeds the cap {cap}")
    return _count_points(curve.A % p, curve.B % p, p)
