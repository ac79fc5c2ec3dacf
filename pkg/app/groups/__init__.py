from app.groups.base import (
    GroupContext,
    ReducedElement,
    ReducedGroup,
    TorsionSubgroup,
    add,
    check_place_range,
    good_places,
    linear_combination,
    negate,
    reduce,
    reduced_group_at,
    scalar_mul,
    torsion_subgroup,
)
from app.groups.curves import Curve, CurveModP, CurvePoint, point_count_mod_p
from app.groups.lattice import (
    RelationLattice,
    hermite_normal_form,
    integer_kernel,
    is_relation,
    relation_lattice,
    saturation,
)
from app.groups.sunits import SUnit, SUnitContext, UnitsModP, su_make, su_value

__all__ = [
    "Curve",
    "CurveModP",
    "CurvePoint",
    "GroupContext",
    "ReducedElement",
    "ReducedGroup",
    "RelationLattice",
    "SUnit",
    "SUnitContext",
    "TorsionSubgroup",
    "UnitsModP",
    "add",
    "check_place_range",
    "good_places",
    "hermite_normal_form",
    "integer_kernel",
    "is_relation",
    "linear_combination",
    "negate",
    "point_count_mod_p",
    "reduce",
    "reduced_group_at",
    "relation_lattice",
    "saturation",
    "scalar_mul",
    "su_make",
    "su_value",
    "torsion_subgroup",
]
