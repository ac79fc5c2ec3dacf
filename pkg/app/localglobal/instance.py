from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from app.config import get_settings
from app.errors import InvalidInputError
from app.groups import GroupContext, is_relation


@dataclass(frozen=True)
class Instance:
    """Points of infinite order in one group, plus optional known relations."""

    context: GroupContext
    points: Tuple
    declared_relations: Tuple[Tuple[int, ...], ...] = ()
    search_bound: int = field(default_factory=lambda: get_settings().search_bound)

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        relations = tuple(tuple(int(a) for a in r) for r in self.declared_relations)
        object.__setattr__(self, "declared_relations", relations)
        if not 1 <= len(points) <= 3:
            raise InvalidInputError(f"an instance holds 1 to 3 points, got {len(points)}")
        if self.search_bound < 1:
            raise InvalidInputError("search_bound must be positive")
        for i, point in enumerate(points):
            if point.context != self.context:
                raise InvalidInputError(f"point {i} does not belong to the instance group")
            if self.context.is_torsion(point):
                raise InvalidInputError(f"point {i} ({point}) is a torsion point")
        for relation in relations:
            if len(relation) != len(points):
                raise InvalidInputError(f"declared relation {relation} has the wrong length")
            if not any(relation) or not is_relation(points, relation):
                raise InvalidInputError(f"declared relation {relation} does not send the points into torsion")

    @property
    def rank(self) -> int:
        return len(self.points)

    def summary(self) -> dict:
        data = dict(self.context.summary())
        data["points"] = [str(point) for point in self.points]
        if self.declared_relations:
            data["declared_relations"] = [list(r) for r in self.declared_relations]
        data["search_bound"] = self.search_bound
        return data


def make_instance(
    context: GroupContext,
    points: Sequence,
    declared_relations: Sequence[Sequence[int]] = (),
    search_bound: Optional[int] = None,
) -> Instance:
    return Instance(
        context=context,
        points=tuple(points),
        declared_relations=tuple(tuple(r) for r in declared_relations),
        search_bound=search_bound or get_settings().search_bound,
    )
