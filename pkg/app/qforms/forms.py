"""Diagonal rational quadratic forms of rank 2 and 3.

Local decisions go through Hilbert symbols on the normalized form; global
decisions combine them via Hasse-Minkowski, and witnesses come from a
Holzer-bounded search on the normalized form.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.arith import factorize, is_perfect_square, rational_square_root, squarefree_decomposition
from app.errors import InternalConsistencyError, InvalidInputError
from app.qforms.hilbert import hilbert_symbol, split_valuation
from app.qforms.places import REAL_PLACE, Place

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class DiagonalForm:
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) not in (2, 3):
            raise InvalidInputError(f"diagonal forms have rank 2 or 3, got {len(coeffs)}")
        if any(c == 0 for c in coeffs):
            raise InvalidInputError(f"zero coefficient in {coeffs}")

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def evaluate(self, vector: Sequence[int]) -> int:
        return sum(c * x * x for c, x in zip(self.coefficients, vector))

    def __str__(self) -> str:
        return "<" + ", ".join(str(c) for c in self.coefficients) + ">"


@dataclass(frozen=True)
class NormalizedForm:
    """A squarefree, pairwise-coprime form and the way back to the original.

    A zero v of `form` gives the zero (multipliers[i] * v[i]) of the
    original form, up to clearing denominators.
    """

    form: DiagonalForm
    multipliers: Tuple[Fraction, ...]

    def pull_back(self, vector: Sequence[int]) -> Vector:
        scaled = [m * x for m, x in zip(self.multipliers, vector)]
        denominator = lcm(*(q.denominator for q in scaled))
        return primitive_vector([int(q * denominator) for q in scaled])


@dataclass(frozen=True)
class LocalProfile:
    form: DiagonalForm
    entries: Tuple[Tuple[Place, bool], ...]

    @property
    def failing(self) -> List[Place]:
        return [place for place, ok in self.entries if not ok]


def primitive_vector(vector: Sequence[int]) -> Vector:
    """Divide by the content and make the first nonzero entry positive."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return tuple(vector)
    result = [x // g for x in vector]
    for x in result:
        if x:
            if x < 0:
                result = [-y for y in result]
            break
    return tuple(result)


def normalize(form: DiagonalForm) -> NormalizedForm:
    coeffs = list(form.coefficients)
    multipliers = [Fraction(1)] * form.rank
    while True:
        for i, c in enumerate(coeffs):
            core, root = squarefree_decomposition(c)
            if root > 1:
                coeffs[i] = core
                multipliers[i] /= root
        content = gcd(*coeffs)
        if content > 1:
            coeffs = [c // content for c in coeffs]
        if form.rank == 2:
            break
        pair = next(
            ((i, j) for i in range(3) for j in range(i + 1, 3) if gcd(coeffs[i], coeffs[j]) > 1),
            None,
        )
        if pair is None:
            break
        i, j = pair
        k = 3 - i - j
        g = gcd(coeffs[i], coeffs[j])
        coeffs[i] //= g
        coeffs[j] //= g
        coeffs[k] *= g
        multipliers[k] *= g
    return NormalizedForm(DiagonalForm(tuple(coeffs)), tuple(multipliers))


def relevant_places(form: DiagonalForm) -> List[Place]:
    primes: Set[int] = {2}
    for c in form.coefficients:
        primes.update(p for p in factorize(abs(c)).primes if p != 2)
    return [REAL_PLACE] + [Place.finite(p) for p in sorted(primes)]


def is_local_square(n: int, v: Place) -> bool:
    """Whether the nonzero integer n is a square in the completion at v."""
    if v.is_infinite:
        return n > 0
    alpha, u = split_valuation(n, v.prime)
    if alpha % 2:
        return False
    if v.prime == 2:
        return u % 8 == 1
    return pow(u % v.prime, (v.prime - 1) // 2, v.prime) == 1


def local_represents_zero(form: DiagonalForm, v: Place) -> bool:
    coeffs = normalize(form).form.coefficients
    if len(coeffs) == 2:
        a, b = coeffs
        return is_local_square(-a * b, v)
    a, b, c = coeffs
    return hilbert_symbol(-a * c, -b * c, v) == 1


def local_profile(form: DiagonalForm) -> LocalProfile:
    return LocalProfile(
        form=form,
        entries=tuple((v, local_represents_zero(form, v)) for v in relevant_places(form)),
    )


def almost_all_rank2_decide(a: int, b: int) -> bool:
    """Binary a x^2 + b y^2 is isotropic mod almost every p iff -ab is a rational square."""
    if a == 0 or b == 0:
        raise InvalidInputError("rank-2 criterion needs nonzero coefficients")
    return rational_square_root(Fraction(-a * b)) is not None


def global_represents_zero(form: DiagonalForm) -> bool:
    if form.rank == 2:
        a, b = form.coefficients
        return is_perfect_square(-a * b)
    return all(local_represents_zero(form, v) for v in relevant_places(form))


def failing_places(form: DiagonalForm) -> List[Place]:
    if form.rank != 3:
        raise InvalidInputError("failing_places is defined for rank-3 forms")
    failing = local_profile(form).failing
    if len(failing) % 2:
        raise InternalConsistencyError(f"odd number of failing places {failing} for {form}")
    return failing


def decide_omitting_place(form: DiagonalForm, omitted: Place) -> bool:
    """Decide a rank-3 form from every relevant place except `omitted`."""
    if form.rank != 3:
        raise InvalidInputError("omitting a place only decides rank-3 forms")
    return all(local_represents_zero(form, v) for v in relevant_places(form) if v != omitted)


def _holzer_search(form: DiagonalForm) -> Optional[Vector]:
    """Lexicographically first nonnegative zero within the Holzer box."""
    if form.rank == 2:
        a, b = form.coefficients
        for x in range(isqrt(abs(b)) + 1):
            rest = -a * x * x
            if rest % b:
                continue
            y2 = rest // b
            if is_perfect_square(y2) and (x or y2):
                return primitive_vector((x, isqrt(y2)))
        return None
    a, b, c = form.coefficients
    z_bound = isqrt(abs(a * b))
    for x in range(isqrt(abs(b * c)) + 1):
        for y in range(isqrt(abs(a * c)) + 1):
            rest = -(a * x * x + b * y * y)
            if rest % c:
                continue
            z2 = rest // c
            if not is_perfect_square(z2):
                continue
            z = isqrt(z2)
            if z <= z_bound and (x or y or z):
                return primitive_vector((x, y, z))
    return None


def find_isotropic_vector(form: DiagonalForm) -> Optional[Vector]:
    if not global_represents_zero(form):
        return None
    normalized = normalize(form)
    found = _holzer_search(normalized.form)
    if found is None:
        raise InternalConsistencyError(f"{form} represents zero but the Holzer box holds no zero")
    vector = normalized.pull_back(found)
    if form.evaluate(vector) != 0:
        raise InternalConsistencyError(f"pulled-back vector {vector} is not a zero of {form}")
    logger.debug("isotropic vector %s for %s", vector, form)
    return vector


def represents_zero_mod(form: DiagonalForm, m: int) -> bool:
    """Exhaustive: a vector over [0, m) with gcd(components, m) = 1 annihilates the form mod m."""
    if m < 2:
        raise InvalidInputError(f"modulus must be at least 2, got {m}")
    columns: List[Dict[int, Set[int]]] = []
    for c in form.coefficients:
        column: Dict[int, Set[int]] = {}
        for x in range(m):
            column.setdefault(c * x * x % m, set()).add(gcd(x, m))
        columns.append(column)
    # partial sums -> gcds of the partial vectors with m
    partial: Dict[int, Set[int]] = {r: set(gs) for r, gs in columns[0].items()}
    for column in columns[1:-1]:
        merged: Dict[int, Set[int]] = {}
        for r, gs in partial.items():
            for s, hs in column.items():
                bucket = merged.setdefault((r + s) % m, set())
                bucket.update(gcd(g, h) for g in gs for h in hs)
        partial = merged
    last = columns[-1]
    for r, gs in partial.items():
        hs = last.get(-r % m)
        if hs and any(gcd(g, h) == 1 for g in gs for h in hs):
            return True
    return False
