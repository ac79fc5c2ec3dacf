from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Tuple

from app.arith import is_prime
from app.errors import InvalidInputError


@total_ordering
@dataclass(frozen=True)
class Place:
    """A place of Q: the real place (prime is None) or a finite prime."""

    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise InvalidInputError(f"place {self.prime} is not a prime")

    @classmethod
    def infinite(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    def sort_key(self) -> Tuple[int, int]:
        return (0, 0) if self.prime is None else (1, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, text: str) -> "Place":
        if text.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinite()
        return cls.finite(int(text))


REAL_PLACE = Place.infinite()
