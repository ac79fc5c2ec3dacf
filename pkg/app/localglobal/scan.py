"""Confront local solvability at every good place in a range with the global decision."""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import primerange

from app.config import get_settings
from app.errors import InvalidInputError
from app.groups import check_place_range
from app.localglobal.decide import GlobalDecision, global_decide
from app.localglobal.instance import Instance
from app.localglobal.local import LocalResult, local_solvable

logger = logging.getLogger(__name__)

CONSISTENT = "consistent"
VIOLATION = "violation"


@dataclass(frozen=True)
class ScanReport:
    instance: dict
    decision: GlobalDecision
    results: Tuple[LocalResult, ...]
    excluded_places: Tuple[int, ...]
    p_min: int
    p_max: int
    violations: Tuple[int, ...] = ()
    obstructions: Dict[int, int] = field(default_factory=dict)

    @property
    def failing(self) -> List[int]:
        return [r.place for r in self.results if not r.solvable]

    @property
    def failing_fraction(self) -> Fraction:
        if not self.results:
            return Fraction(0)
        return Fraction(len(self.failing), len(self.results))

    @property
    def verdict(self) -> str:
        return VIOLATION if self.violations else CONSISTENT


def _scan_chunk(instance: Instance, places: Sequence[int]) -> List[LocalResult]:
    return [local_solvable(instance, p) for p in places]


def _chunks(places: List[int], count: int) -> List[List[int]]:
    size = -(-len(places) // count)
    return [places[i : i + size] for i in range(0, len(places), size)]


def _split_places(instance: Instance, p_min: int, p_max: int) -> Tuple[List[int], List[int]]:
    context = instance.context
    torsion_size = context.torsion_subgroup().size
    scanned, excluded = [], []
    for p in primerange(max(p_min, 2), p_max + 1):
        p = int(p)
        if context.is_good_place(p) and torsion_size % p:
            scanned.append(p)
        else:
            excluded.append(p)
    return scanned, excluded


def scan(instance: Instance, p_max: int, p_min: int = 2, jobs: Optional[int] = None) -> ScanReport:
    if p_min > p_max:
        raise InvalidInputError(f"empty range: p_min {p_min} > p_max {p_max}")
    if instance.rank not in (2, 3):
        raise InvalidInputError(f"scans need 2 or 3 points, got {instance.rank}")
    check_place_range(instance.context, p_max)
    jobs = jobs or get_settings().jobs
    places, excluded = _split_places(instance, p_min, p_max)
    logger.info("scanning %d good places in [%d, %d] with %d worker(s)", len(places), p_min, p_max, jobs)
    decision = global_decide(instance)
    if jobs > 1 and len(places) > 1:
        chunks = _chunks(places, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            # map keeps chunk order, so results stay ascending
            parts = executor.map(_scan_chunk, [instance] * len(chunks), chunks)
            results = [r for part in parts for r in part]
    else:
        results = _scan_chunk(instance, places)
    violations: Tuple[int, ...] = ()
    if decision.solvable:
        violations = tuple(r.place for r in results if not r.solvable)
        if violations:
            logger.error("global witness %s but local failure at %s", decision.witness, list(violations))
    obstructions = Counter(r.obstruction[0] for r in results if r.obstruction)
    report = ScanReport(
        instance=instance.summary(),
        decision=decision,
        results=tuple(results),
        excluded_places=tuple(excluded),
        p_min=p_min,
        p_max=p_max,
        violations=violations,
        obstructions=dict(sorted(obstructions.items())),
    )
    logger.info("scan finished: %s, failing fraction %s", report.verdict, report.failing_fraction)
    return report
