"""Empirical probes of the two standing assumptions on B and its reductions."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from app.arith import factorize, is_prime, valuation
from app.errors import InvalidInputError
from app.groups import GroupContext, good_places, reduced_group_at, relation_lattice
from app.localglobal.instance import Instance
from app.localglobal.local import local_solvable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProbeReport:
    l: int
    pattern: Tuple[int, ...]
    matches: int
    total: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.matches, self.total) if self.total else Fraction(0)


@dataclass(frozen=True)
class ProofPatternReport(ProbeReport):
    """Matches of the order pattern the independence argument uses.

    elements names the combinations of the points whose orders are matched;
    unsolvable_matches counts matching places that are locally unsolvable,
    which must be all of them.
    """

    elements: Tuple[str, ...] = ()
    unsolvable_matches: int = 0


def _matches(orders: Sequence[int], l: int, pattern: Sequence[int]) -> bool:
    # k = 0 means l does not divide the order, i.e. valuation 0
    return all(valuation(order, l) == k for order, k in zip(orders, pattern))


def _check_pattern(points: Sequence, l: int, pattern: Sequence[int]) -> None:
    if not is_prime(l):
        raise InvalidInputError(f"l must be prime, got {l}")
    if len(pattern) != len(points):
        raise InvalidInputError(f"pattern {list(pattern)} does not match {len(points)} points")
    if any(k < 0 for k in pattern):
        raise InvalidInputError("pattern entries must be nonnegative")


def probe_assumption1(points: Sequence, l: int, pattern: Sequence[int], p_max: int, p_min: int = 2) -> ProbeReport:
    points = tuple(points)
    if not points:
        raise InvalidInputError("probe needs at least one point")
    _check_pattern(points, l, pattern)
    context = points[0].context
    if len(points) <= 3 and relation_lattice(points).rank:
        logger.warning("probing a dependent tuple; the pattern frequency may be zero")
    matches = total = 0
    for p in good_places(context, p_min, p_max):
        group = reduced_group_at(context, p)
        orders = [group.element_order(context.reduce_representation(point, p)) for point in points]
        total += 1
        matches += _matches(orders, l, pattern)
    logger.info("assumption 1 probe: %d of %d places match %s at l = %d", matches, total, list(pattern), l)
    return ProbeReport(l, tuple(pattern), matches, total)


def _torsion_injects(context: GroupContext, p: int) -> bool:
    group = reduced_group_at(context, p)
    seen = set()
    for t, order in context.torsion_subgroup().elements:
        reduced = context.reduce_representation(t, p)
        if group.mul(order, reduced) != group.identity:
            return False
        if any(group.mul(order // q, reduced) == group.identity for q in factorize(order).primes):
            return False
        seen.add(reduced)
    return len(seen) == context.torsion_subgroup().size


def probe_assumption2(context: GroupContext, p_max: int, p_min: int = 2) -> List[int]:
    failing = [p for p in good_places(context, p_min, p_max) if not _torsion_injects(context, p)]
    if failing:
        logger.warning("torsion does not inject at %s", failing)
    return failing


def _least_prime_not_dividing(n: int) -> int:
    l = 2
    while n % l == 0 or not is_prime(l):
        l += 1
    return l


def probe_proof_pattern(instance: Instance, p_max: int, p_min: int = 2) -> ProofPatternReport:
    """Count places whose orders force local unsolvability of independent points.

    Two points: l the least prime not dividing #B_tors, l^2 || ord P and
    l^3 || ord Q. Three points: l = 2, with 2^e || #B_tors, and
    2^(1+e), 2^(3+e), 2^(4+e) exactly dividing the orders of P+Q, Q, Q+R.
    """
    context = instance.context
    torsion_size = context.torsion_subgroup().size
    if instance.rank == 2:
        l = _least_prime_not_dividing(torsion_size)
        pattern: Tuple[int, ...] = (2, 3)
        elements: Tuple[str, ...] = ("P", "Q")
        P, Q = instance.points
        combos = (P, Q)
    elif instance.rank == 3:
        l = 2
        e = valuation(torsion_size, 2)
        pattern = (1 + e, 3 + e, 4 + e)
        elements = ("P+Q", "Q", "Q+R")
        P, Q, R = instance.points
        combos = (context.add(P, Q), Q, context.add(Q, R))
    else:
        raise InvalidInputError(f"proof patterns exist for 2 or 3 points, got {instance.rank}")
    matches = total = unsolvable = 0
    for p in good_places(context, p_min, p_max):
        group = reduced_group_at(context, p)
        orders = [group.element_order(context.reduce_representation(g, p)) for g in combos]
        total += 1
        if _matches(orders, l, pattern):
            matches += 1
            unsolvable += not local_solvable(instance, p).solvable
    if unsolvable != matches:
        logger.warning("%d of %d pattern places are locally solvable", matches - unsolvable, matches)
    return ProofPatternReport(l, pattern, matches, total, elements, unsolvable)
