"""Local solvability of x_1^2 P_1 + ... + x_m^2 P_m = T at a single good place."""

import logging
from dataclasses import dataclass
from itertools import product
from math import gcd, lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.arith import crt, factorize
from app.errors import InternalConsistencyError, InvalidInputError
from app.groups import ReducedGroup, reduced_group_at
from app.localglobal.instance import Instance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalResult:
    """Outcome at one place.

    witness is (residues mod `modulus`, global torsion element T); when the
    place is unsolvable, obstruction is the prime power (l, e) of the
    modulus at which no primitive residue solution exists.
    """

    place: int
    solvable: bool
    witness: Optional[Tuple[Tuple[int, ...], Any]]
    modulus: int
    orders: Tuple[int, ...]
    obstruction: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class _ReducedInstance:
    group: ReducedGroup
    points: Tuple
    orders: Tuple[int, ...]
    modulus: int
    torsion: Tuple[Tuple[Any, Any], ...]  # (reduction, global torsion element)

    @property
    def targets(self) -> set:
        return {reduction for reduction, _ in self.torsion}


def _reduce_instance(instance: Instance, p: int) -> _ReducedInstance:
    if instance.rank not in (2, 3):
        raise InvalidInputError(f"local solvability needs 2 or 3 points, got {instance.rank}")
    context = instance.context
    group = reduced_group_at(context, p)
    points = tuple(context.reduce_representation(point, p) for point in instance.points)
    orders = tuple(group.element_order(point) for point in points)
    torsion = tuple((context.reduce_representation(t, p), t) for t in context.torsion_subgroup().points)
    return _ReducedInstance(group, points, orders, lcm(*orders), torsion)


def _square_table(group: ReducedGroup, point, q: int) -> Dict[Any, int]:
    """value of x^2 * point -> least x in [0, q) producing it."""
    multiples = group.multiples(point, q)
    table: Dict[Any, int] = {}
    for x in range(q):
        table.setdefault(multiples[x * x % q], x)
    return table


def _solve_prime_power(group: ReducedGroup, parts: Sequence, q: int, targets: set) -> Optional[Tuple[int, ...]]:
    """x mod q with some x_i = 1 and sum x_j^2 parts_j in targets.

    Scaling a primitive solution by the inverse of a unit coordinate keeps
    it a solution, because the targets form a subgroup; so trying x_i = 1
    for each i covers every primitive residue vector.
    """
    rank = len(parts)
    tables = [_square_table(group, part, q) for part in parts]
    for i in range(rank):
        others = [j for j in range(rank) if j != i]
        base = parts[i]
        if rank == 2:
            (j,) = others
            for value, x in tables[j].items():
                if group.add(base, value) in targets:
                    vector = [0, 0]
                    vector[i], vector[j] = 1, x
                    return tuple(vector)
            continue
        j, k = others
        for value, x in tables[j].items():
            partial = group.add(base, value)
            for t in targets:
                y = tables[k].get(group.add(t, group.neg(partial)))
                if y is not None:
                    vector = [0, 0, 0]
                    vector[i], vector[j], vector[k] = 1, x, y
                    return tuple(vector)
    return None


def _verified_result(instance: Instance, reduced: _ReducedInstance, p: int, residues: Tuple[int, ...]) -> LocalResult:
    group = reduced.group
    total = group.identity
    for x, point in zip(residues, reduced.points):
        total = group.add(total, group.mul(x * x, point))
    torsion = next((t for reduction, t in reduced.torsion if reduction == total), None)
    if torsion is None or gcd(reduced.modulus, *residues) != 1:
        raise InternalConsistencyError(f"local witness {residues} at {p} does not verify")
    return LocalResult(p, True, (residues, torsion), reduced.modulus, reduced.orders)


def local_solvable(instance: Instance, p: int) -> LocalResult:
    reduced = _reduce_instance(instance, p)
    group, modulus, targets = reduced.group, reduced.modulus, reduced.targets
    residues: List[List[int]] = [[] for _ in range(instance.rank)]
    moduli: List[int] = []
    for l, e in factorize(modulus).factors:
        q = l**e
        cofactor = modulus // q
        parts = [group.mul(cofactor, point) for point in reduced.points]
        solution = _solve_prime_power(group, parts, q, targets)
        if solution is None:
            logger.debug("place %d: no primitive solution modulo %d^%d", p, l, e)
            return LocalResult(p, False, None, modulus, reduced.orders, (l, e))
        for coordinate, x in zip(residues, solution):
            coordinate.append(x)
        moduli.append(q)
    combined = tuple(crt(coordinate, moduli) for coordinate in residues)
    return _verified_result(instance, reduced, p, combined)


def local_solvable_bruteforce(instance: Instance, p: int) -> LocalResult:
    """Literal search over [0, M)^rank; exponential, meant for small M."""
    reduced = _reduce_instance(instance, p)
    group, modulus, targets = reduced.group, reduced.modulus, reduced.targets
    for residues in product(range(modulus), repeat=instance.rank):
        if gcd(modulus, *residues) != 1:
            continue
        total = group.identity
        for x, point in zip(residues, reduced.points):
            total = group.add(total, group.mul(x * x, point))
        if total in targets:
            return _verified_result(instance, reduced, p, residues)
    return LocalResult(p, False, None, modulus, reduced.orders)
