"""Relation lattices: integer vectors sending a point tuple into torsion."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from app.config import get_settings
from app.errors import InvalidInputError
from app.groups.base import linear_combination
from app.groups.sunits import SUnitContext

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]
MAX_SATURATION_INDEX = 10_000


def _echelon(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[List[int]], int]:
    """Unimodular row reduction of the first ncols columns to Hermite form.

    Returns the transformed rows and the number of pivot rows.
    """
    rows = [list(r) for r in rows]
    pivot = 0
    for col in range(ncols):
        if pivot == len(rows):
            break
        while True:
            nonzero = [i for i in range(pivot, len(rows)) if rows[i][col]]
            if not nonzero:
                break
            smallest = min(nonzero, key=lambda i: abs(rows[i][col]))
            rows[pivot], rows[smallest] = rows[smallest], rows[pivot]
            clean = True
            for i in range(pivot + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[pivot][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot])]
                    clean = clean and rows[i][col] == 0
            if clean:
                break
        if rows[pivot][col] == 0:
            continue
        if rows[pivot][col] < 0:
            rows[pivot] = [-a for a in rows[pivot]]
        for i in range(pivot):
            q = rows[i][col] // rows[pivot][col]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot])]
        pivot += 1
    return rows, pivot


def hermite_normal_form(vectors: Sequence[Sequence[int]]) -> List[IntVector]:
    """Row-style HNF basis of the lattice spanned by the vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    rows, rank = _echelon(vectors, len(vectors[0]))
    return [tuple(r) for r in rows[:rank]]


def integer_kernel(rows: Sequence[Sequence[int]]) -> List[IntVector]:
    """HNF basis of {a in Z^m : sum_i a_i * rows[i] = 0}."""
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    augmented = [list(r) + [1 if j == i else 0 for j in range(m)] for i, r in enumerate(rows)]
    reduced, rank = _echelon(augmented, width)
    return hermite_normal_form([r[width:] for r in reduced[rank:]])


def _coordinates(vector: Sequence[int], basis: Sequence[IntVector]) -> List[int]:
    """Integer coordinates of a lattice vector in a row-echelon basis."""
    rest = list(vector)
    coords = []
    for row in basis:
        col = next(j for j, a in enumerate(row) if a)
        c, r = divmod(rest[col], row[col])
        if r:
            raise InvalidInputError(f"{tuple(vector)} is not in the lattice")
        coords.append(c)
        rest = [a - c * b for a, b in zip(rest, row)]
    if any(rest):
        raise InvalidInputError(f"{tuple(vector)} is not in the lattice")
    return coords


def saturation(basis: Sequence[IntVector], m: int) -> List[IntVector]:
    """HNF basis of (Q-span of basis) intersected with Z^m."""
    if not basis:
        return []
    normals = integer_kernel([[b[i] for b in basis] for i in range(m)])
    if not normals:
        return [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    return integer_kernel([[n[i] for n in normals] for i in range(m)])


@dataclass(frozen=True)
class RelationLattice:
    points: Tuple
    basis: Tuple[IntVector, ...]
    certified: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    def summary(self) -> dict:
        return {"basis": [list(v) for v in self.basis], "rank": self.rank, "certified": self.certified}


def is_relation(points: Sequence, coefficients: Sequence[int]) -> bool:
    context = points[0].context
    return context.is_torsion(linear_combination(coefficients, points))


def _bounded_relations(points: Sequence, bound: int) -> List[IntVector]:
    """Every nonzero vector with max-norm <= bound sending the points into torsion."""
    context = points[0].context
    torsion = context.torsion_subgroup().points
    span = range(-bound, bound + 1)
    tables = [{a: context.scalar_mul(a, point) for a in span} for point in points]
    last: Dict = {}
    for a, multiple in tables[-1].items():
        last.setdefault(context.neg(multiple), []).append(a)
    found = []
    for head in product(span, repeat=len(points) - 1):
        partial = context.identity
        for a, table in zip(head, tables):
            partial = context.add(partial, table[a])
        for t in torsion:
            # partial + a*P_last = t  <=>  -a*P_last = partial - t
            for a in last.get(context.add(partial, context.neg(t)), ()):
                vector = head + (a,)
                if any(vector):
                    found.append(vector)
    return sorted(set(found))


def _exact_from_saturation(points: Sequence, found: List[IntVector]) -> List[IntVector]:
    """The full relation lattice, given relations of maximal rank."""
    m = len(points)
    lower = hermite_normal_form(found)
    upper = saturation(lower, m)
    coords = hermite_normal_form([_coordinates(v, upper) for v in lower])
    diagonal = [row[i] for i, row in enumerate(coords)]
    index = 1
    for d in diagonal:
        index *= d
    if index > MAX_SATURATION_INDEX:
        return []
    generators = list(lower)
    for combo in product(*(range(d) for d in diagonal)):
        if not any(combo):
            continue
        vector = tuple(sum(c * row[j] for c, row in zip(combo, upper)) for j in range(m))
        if is_relation(points, vector):
            generators.append(vector)
    return hermite_normal_form(generators)


def relation_lattice(
    points: Sequence,
    search_bound: Optional[int] = None,
    extra_relations: Sequence[Sequence[int]] = (),
) -> RelationLattice:
    """Relations of the points; extra_relations are verified and join the bounded search."""
    if not 1 <= len(points) <= 3:
        raise InvalidInputError(f"relation lattices take 1 to 3 points, got {len(points)}")
    context = points[0].context
    if any(point.context != context for point in points):
        raise InvalidInputError("points of a relation lattice must share one group")
    points = tuple(points)
    m = len(points)
    if isinstance(context, SUnitContext):
        basis = integer_kernel([point.exponents for point in points])
        return RelationLattice(points, tuple(basis), True)
    bound = search_bound or get_settings().search_bound
    found = _bounded_relations(points, bound)
    for relation in extra_relations:
        relation = tuple(relation)
        if any(relation) and is_relation(points, relation):
            found.append(relation)
        else:
            logger.warning("ignoring relation %s: it does not reach torsion", relation)
    basis = hermite_normal_form(found)
    certified = False
    non_torsion = not any(context.is_torsion(point) for point in points)
    if non_torsion and len(basis) == m - 1:
        exact = _exact_from_saturation(points, found) if basis else []
        if exact or not basis:
            basis, certified = exact, True
    logger.debug("relation lattice basis %s (certified=%s, bound %d)", basis, certified, bound)
    return RelationLattice(points, tuple(basis), certified)
