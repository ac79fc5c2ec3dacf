"""Global deciders for x_1^2 P_1 + ... + x_m^2 P_m = T with T torsion, m = 2, 3.

Both deciders read the answer off the relation lattice L of the points: a
primitive x solves the equation iff (x_1^2, ..., x_m^2) lies in L.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Any, Dict, Optional, Tuple

from app.arith import is_perfect_square, rational_square_root
from app.errors import InternalConsistencyError, InvalidInputError
from app.groups import RelationLattice, linear_combination, relation_lattice
from app.localglobal.instance import Instance
from app.qforms import DiagonalForm, find_isotropic_vector, global_represents_zero, primitive_vector

logger = logging.getLogger(__name__)


class DecisionStatus(str, Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    INDEPENDENT_UNCERTIFIED = "independent_uncertified"


@dataclass(frozen=True)
class GlobalDecision:
    status: DecisionStatus
    certificate: RelationLattice
    proof_case: str
    witness: Optional[Tuple[int, ...]] = None
    torsion: Any = None
    reason: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.status is DecisionStatus.SOLVABLE


def _lattice(instance: Instance) -> RelationLattice:
    for point in instance.points:
        if instance.context.is_torsion(point):
            raise InvalidInputError(f"{point} is a torsion point")
    return relation_lattice(
        instance.points,
        search_bound=instance.search_bound,
        extra_relations=instance.declared_relations,
    )


def _solved(instance: Instance, lattice: RelationLattice, proof_case: str, witness, reason: str, **details) -> GlobalDecision:
    witness = primitive_vector(witness)
    if gcd(*witness) != 1:
        raise InternalConsistencyError(f"witness {witness} is not primitive")
    torsion = linear_combination([x * x for x in witness], instance.points)
    if not instance.context.is_torsion(torsion):
        raise InternalConsistencyError(f"witness {witness} does not reach torsion")
    logger.info("solvable (%s): witness %s, T = %s", proof_case, witness, torsion)
    return GlobalDecision(DecisionStatus.SOLVABLE, lattice, proof_case, witness, torsion, reason, details)


def _unsolved(lattice: RelationLattice, proof_case: str, reason: str, **details) -> GlobalDecision:
    status = DecisionStatus.UNSOLVABLE if lattice.certified else DecisionStatus.INDEPENDENT_UNCERTIFIED
    if not lattice.certified:
        reason = f"{reason}; relation search is bound-limited"
    logger.info("%s (%s): %s", status.value, proof_case, reason)
    return GlobalDecision(status, lattice, proof_case, reason=reason, details=details)


def _square_roots(vector) -> Optional[Tuple[int, ...]]:
    """Coordinatewise roots of +-vector when it is a vector of squares."""
    for sign in (1, -1):
        signed = [sign * a for a in vector]
        if all(a >= 0 and is_perfect_square(a) for a in signed):
            return tuple(isqrt(a) for a in signed)
    return None


def _decide_rank_one(instance: Instance, lattice: RelationLattice, proof_case: str, **details) -> GlobalDecision:
    (generator,) = lattice.basis
    roots = _square_roots(generator)
    if roots is not None:
        return _solved(instance, lattice, proof_case, roots, f"relation {generator} is +-(squares)", **details)
    return _unsolved(lattice, proof_case, f"relation {generator} is not +-(squares)", **details)


def global_decide_rank2(instance: Instance) -> GlobalDecision:
    if instance.rank != 2:
        raise InvalidInputError(f"rank-2 decider got {instance.rank} points")
    lattice = _lattice(instance)
    if lattice.rank == 0:
        return _unsolved(lattice, "independent", "the points are independent")
    return _decide_rank_one(instance, lattice, "dependent")


def _cross(u, v) -> Tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def global_decide_rank3(instance: Instance) -> GlobalDecision:
    if instance.rank != 3:
        raise InvalidInputError(f"rank-3 decider got {instance.rank} points")
    lattice = _lattice(instance)
    if lattice.rank == 0:
        return _unsolved(lattice, "independent", "the points are independent")
    if lattice.rank == 1:
        a, b, c = lattice.basis[0]
        if 0 in (a, b, c):
            return _decide_rank_one(instance, lattice, "dependent_pair")
        # aP + bQ + cR = T: solvable iff b/a and c/a are rational squares (with a sign check)
        ratios = {
            "b_over_a_square": rational_square_root(Fraction(b, a)) is not None,
            "c_over_a_square": rational_square_root(Fraction(c, a)) is not None,
        }
        decision = _decide_rank_one(instance, lattice, "no_dependent_pair", **ratios)
        if decision.solvable and not all(ratios.values()):
            raise InternalConsistencyError(f"square ratios {ratios} disagree with witness {decision.witness}")
        return decision
    if lattice.rank == 3:
        raise InternalConsistencyError("infinite-order points cannot have a full-rank relation lattice")
    normal = primitive_vector(_cross(*lattice.basis))
    details = {"normal": list(normal)}
    zero = next((i for i, n in enumerate(normal) if n == 0), None)
    if zero is not None:
        # n_i = 0 puts the unit vector e_i in the saturated lattice
        witness = tuple(1 if j == zero else 0 for j in range(3))
        return _solved(instance, lattice, "all_dependent", witness, f"normal {normal} has a zero entry", **details)
    form = DiagonalForm(normal)
    if global_represents_zero(form):
        witness = find_isotropic_vector(form)
        return _solved(instance, lattice, "all_dependent", witness, f"form {form} is isotropic", **details)
    return _unsolved(lattice, "all_dependent", f"form {form} is anisotropic", **details)


def global_decide(instance: Instance) -> GlobalDecision:
    if instance.rank == 2:
        return global_decide_rank2(instance)
    if instance.rank == 3:
        return global_decide_rank3(instance)
    raise InvalidInputError(f"global decisions need 2 or 3 points, got {instance.rank}")
