"""Rank >= 4: the form 2x_1^2 + x_2^2 + ... + x_n^2 is locally solvable everywhere
yet has no nonzero global solution against a point of infinite order."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Set, Tuple

from app.arith import factorize, gauss_two_k
from app.config import get_settings
from app.errors import InternalConsistencyError, InvalidInputError
from app.groups import reduced_group_at

logger = logging.getLogger(__name__)

MIN_COUNTEREXAMPLE_RANK = 4


@dataclass(frozen=True)
class CounterexampleResult:
    place: int
    vector: Tuple[int, ...]
    coefficient: int
    element_order: int


@dataclass(frozen=True)
class PositiveDefiniteReport:
    """Every nonzero vector in the box has a coefficient c with c*P outside torsion.

    certificates maps each attainable coefficient to a good prime at which
    c*P does not reduce into the reduced torsion subgroup.
    """

    n: int
    box: int
    vectors_checked: int
    certificates: Dict[int, int]


def _form_weights(n: int) -> Tuple[int, ...]:
    return (2,) + (1,) * (n - 1)


def _check_point(point) -> None:
    if point.context.is_torsion(point):
        raise InvalidInputError(f"{point} is a torsion point")


def counterexample_rank_n(point, p: int, n: int) -> CounterexampleResult:
    if n < MIN_COUNTEREXAMPLE_RANK:
        raise InvalidInputError(f"the rank-{n} equation obeys the local-global principle; need n >= 4")
    _check_point(point)
    context = point.context
    group = reduced_group_at(context, p)
    reduced = context.reduce_representation(point, p)
    k = group.element_order(reduced)
    a, b, c = gauss_two_k(k)
    vector = (a, b, c, 1) + (0,) * (n - MIN_COUNTEREXAMPLE_RANK)
    coefficient = sum(w * x * x for w, x in zip(_form_weights(n), vector))
    if coefficient != 2 * k or group.mul(coefficient, reduced) != group.identity:
        raise InternalConsistencyError(f"counterexample vector {vector} fails at {p}")
    logger.debug("place %d: ord %d, vector %s", p, k, vector)
    return CounterexampleResult(p, vector, coefficient, k)


def _attainable_coefficients(n: int, box: int) -> Set[int]:
    sums = {0}
    for weight in _form_weights(n):
        sums = {s + weight * x * x for s in sums for x in range(box + 1)}
    # the form is positive definite, so only the zero vector gives 0
    sums.discard(0)
    return sums


def _torsion_index(point, p: int) -> int:
    """Least h >= 1 with h * (P mod p) in the reduced torsion."""
    context = point.context
    group = reduced_group_at(context, p)
    targets = {context.reduce_representation(t, p) for t in context.torsion_subgroup().points}
    reduced = context.reduce_representation(point, p)
    order = group.element_order(reduced)
    h = order
    for q in factorize(order).primes:
        while h % q == 0 and group.mul(h // q, reduced) in targets:
            h //= q
    return h


def positive_definite_check(point, n: int, box: Optional[int] = None) -> PositiveDefiniteReport:
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    _check_point(point)
    box = box or get_settings().box_bound
    context = point.context
    pending = sorted(_attainable_coefficients(n, box))
    certificates: Dict[int, int] = {}
    cap = get_settings().point_count_cap
    p = 1
    while pending:
        p += 2
        if p > cap:
            raise InternalConsistencyError(f"coefficients {pending[:5]} stay torsion mod every prime up to {cap}")
        if not context.is_good_place(p):
            continue
        h = _torsion_index(point, p)
        still = []
        for c in pending:
            if c % h:
                certificates[c] = p
            else:
                still.append(c)
        pending = still
    logger.info("no nonzero vector with max-norm <= %d annihilates %s (n = %d)", box, point, n)
    return PositiveDefiniteReport(n, box, (2 * box + 1) ** n - 1, dict(sorted(certificates.items())))
