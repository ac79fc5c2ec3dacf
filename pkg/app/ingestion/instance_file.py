import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from app.errors import InvalidInputError
from app.groups import Curve, CurvePoint, GroupContext, SUnit, SUnitContext, su_make
from app.localglobal import Instance, make_instance
from app.utils.formatting import SCHEMA_VERSION, format_rational, parse_rational

logger = logging.getLogger(__name__)

INFINITY = "infinity"

RationalText = Union[int, str]
PointEntry = Union[RationalText, List[RationalText]]


class InstanceFile(BaseModel):
    """On-disk description of an instance.

    S-unit points are rationals ("num/den" strings or integers); curve
    points are [x, y] pairs of rationals or the string "infinity".
    """

    schema_version: int = SCHEMA_VERSION
    backend: Literal["sunits", "elliptic"]
    S: Optional[List[int]] = None
    A: Optional[int] = None
    B: Optional[int] = None
    points: List[PointEntry] = Field(min_length=1, max_length=3)
    declared_relations: List[List[int]] = Field(default_factory=list)
    search_bound: Optional[int] = Field(default=None, ge=1)

    @field_validator("points")
    @classmethod
    def _points_parse(cls, points):
        for entry in points:
            values = entry if isinstance(entry, list) else [entry]
            for value in values:
                if value != INFINITY:
                    parse_rational(value)
        return points

    @model_validator(mode="after")
    def _backend_fields(self):
        if self.backend == "sunits":
            if self.S is None:
                raise ValueError("sunits instances need S")
            if any(isinstance(p, list) or p == INFINITY for p in self.points):
                raise ValueError("sunits points are single rationals")
        else:
            if self.A is None or self.B is None:
                raise ValueError("elliptic instances need A and B")
            for p in self.points:
                if p != INFINITY and not (isinstance(p, list) and len(p) == 2):
                    raise ValueError(f"curve point {p!r} must be [x, y] or 'infinity'")
        return self


def _curve_point(curve: Curve, entry) -> CurvePoint:
    if entry == INFINITY:
        return curve.identity
    x, y = (parse_rational(v) for v in entry)
    return curve.point(x, y)


def _context_and_points(data: InstanceFile) -> Tuple[GroupContext, list]:
    if data.backend == "sunits":
        context = SUnitContext(tuple(data.S))
        return context, [su_make(context, parse_rational(q)) for q in data.points]
    context = Curve(data.A, data.B)
    return context, [_curve_point(context, entry) for entry in data.points]


def file_to_instance(data: InstanceFile) -> Instance:
    context, points = _context_and_points(data)
    return make_instance(context, points, data.declared_relations, data.search_bound)


def parse_instance(text: str) -> Instance:
    """Parse instance JSON text; raises pydantic ValidationError or InvalidInputError."""
    return file_to_instance(InstanceFile.model_validate_json(text))


def _read(path: Union[str, Path]) -> str:
    path = Path(path)
    logger.debug("loading instance from %s", path)
    try:
        return path.read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from exc


def load_instance(path: Union[str, Path]) -> Instance:
    return parse_instance(_read(path))


def load_context(path: Union[str, Path]) -> GroupContext:
    """The group of an instance file; its points may be torsion."""
    context, _ = _context_and_points(InstanceFile.model_validate_json(_read(path)))
    return context


def _point_entry(point) -> PointEntry:
    if isinstance(point, SUnit):
        return format_rational(point.value)
    if point.is_infinity:
        return INFINITY
    return [format_rational(c) for c in point.affine]


def instance_to_file(instance: Instance) -> InstanceFile:
    context = instance.context
    if isinstance(context, SUnitContext):
        fields = {"backend": "sunits", "S": list(context.primes)}
    else:
        fields = {"backend": "elliptic", "A": context.A, "B": context.B}
    return InstanceFile(
        points=[_point_entry(point) for point in instance.points],
        declared_relations=[list(r) for r in instance.declared_relations],
        search_bound=instance.search_bound,
        **fields,
    )


def dump_instance(instance: Instance, path: Optional[Union[str, Path]] = None) -> str:
    text = json.dumps(instance_to_file(instance).model_dump(exclude_none=True), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
