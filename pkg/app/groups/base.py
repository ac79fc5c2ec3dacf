"""The reduction-map interface shared by the S-unit and elliptic-curve backends."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Generic, Hashable, List, Optional, Tuple, TypeVar

from sympy import primerange

from app.arith import Factorization, factorize, generic_element_order
from app.errors import BadPlaceError, CapExceededError, ContextMismatchError, InternalConsistencyError

E = TypeVar("E", bound=Hashable)


class ReducedGroup(ABC, Generic[E]):
    """A finite group B_v with additive notation and hashable elements."""

    def __init__(self, p: int):
        self.p = p

    @property
    @abstractmethod
    def identity(self) -> E:
        ...

    @property
    @abstractmethod
    def order(self) -> int:
        ...

    @abstractmethod
    def add(self, g: E, h: E) -> E:
        ...

    @abstractmethod
    def neg(self, g: E) -> E:
        ...

    def mul(self, n: int, g: E) -> E:
        if n < 0:
            n, g = -n, self.neg(g)
        result = self.identity
        while n:
            if n & 1:
                result = self.add(result, g)
            g = self.add(g, g)
            n >>= 1
        return result

    @cached_property
    def order_factorization(self) -> Factorization:
        return factorize(self.order)

    def element_order(self, g: E) -> int:
        return generic_element_order(g, self.mul, self.identity, self.order_factorization)

    def multiples(self, g: E, count: int) -> List[E]:
        """[0*g, 1*g, ..., (count-1)*g] by repeated addition."""
        table = [self.identity]
        for _ in range(count - 1):
            table.append(self.add(table[-1], g))
        return table


@dataclass(frozen=True)
class ReducedElement:
    """r_v(g) together with ord_v(g) and |B_v|."""

    place: int
    representation: Any
    element_order: int
    group_order: int

    def __post_init__(self):
        if self.element_order < 1 or self.group_order % self.element_order:
            raise InternalConsistencyError(
                f"order {self.element_order} does not divide |B_v| = {self.group_order} at {self.place}"
            )


@dataclass(frozen=True)
class TorsionSubgroup:
    """All torsion elements with their orders, identity first."""

    elements: Tuple[Tuple[Any, int], ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def points(self) -> List[Any]:
        return [g for g, _ in self.elements]

    def __contains__(self, g) -> bool:
        return any(g == t for t, _ in self.elements)


class GroupContext(ABC):
    """A Mordell-Weil type group B with reductions r_v at good places."""

    backend: str = ""

    @property
    @abstractmethod
    def identity(self) -> Any:
        ...

    @abstractmethod
    def add(self, g, h):
        ...

    @abstractmethod
    def neg(self, g):
        ...

    def scalar_mul(self, n: int, g):
        if n < 0:
            return self.neg(self.scalar_mul(-n, g))
        result = self.identity
        while n:
            if n & 1:
                result = self.add(result, g)
            g = self.add(g, g)
            n >>= 1
        return result

    @abstractmethod
    def torsion_subgroup(self) -> TorsionSubgroup:
        ...

    def is_torsion(self, g) -> bool:
        return g in self.torsion_subgroup()

    @abstractmethod
    def is_good_place(self, p: int) -> bool:
        ...

    @abstractmethod
    def reduced_group(self, p: int) -> ReducedGroup:
        """B_v for a good prime p; callers go through `reduced_group_at`."""

    @abstractmethod
    def reduce_representation(self, g, p: int) -> Hashable:
        """r_v(g) as an element of reduced_group(p)."""

    @abstractmethod
    def summary(self) -> dict:
        ...

    def place_cap(self) -> Optional[int]:
        """Largest prime at which reduction is supported, or None for no limit."""
        return None


@lru_cache(maxsize=8192)
def reduced_group_at(context: GroupContext, p: int) -> ReducedGroup:
    if not context.is_good_place(p):
        raise BadPlaceError(f"{p} is not a good place for {context.summary()}")
    return context.reduced_group(p)


def _same_context(g, h) -> GroupContext:
    if g.context != h.context:
        raise ContextMismatchError("elements belong to different groups")
    return g.context


def add(g, h):
    return _same_context(g, h).add(g, h)


def negate(g):
    return g.context.neg(g)


def scalar_mul(n: int, g):
    return g.context.scalar_mul(n, g)


def linear_combination(coefficients, points):
    """sum(a_i * P_i) over a nonempty list of points of one group."""
    context = points[0].context
    total = context.identity
    for a, point in zip(coefficients, points):
        _same_context(total, point)
        total = context.add(total, context.scalar_mul(a, point))
    return total


def torsion_subgroup(context: GroupContext) -> TorsionSubgroup:
    return context.torsion_subgroup()


def check_place_range(context: GroupContext, p_max: int) -> None:
    cap = context.place_cap()
    if cap is not None and p_max > cap:
        raise CapExceededError(f"places up to {p_max} exceed the reduction cap {cap}")


def good_places(context: GroupContext, p_min: int, p_max: int) -> List[int]:
    if p_min > p_max:
        return []
    check_place_range(context, p_max)
    return [p for p in primerange(max(p_min, 2), p_max + 1) if context.is_good_place(int(p))]


def reduce(g, p: int) -> ReducedElement:
    group = reduced_group_at(g.context, p)
    representation = g.context.reduce_representation(g, p)
    return ReducedElement(
        place=p,
        representation=representation,
        element_order=group.element_order(representation),
        group_order=group.order,
    )
