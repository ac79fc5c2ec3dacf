"""Canonical text forms and the JSON report envelope."""

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.qforms import Place

SCHEMA_VERSION = 1
MAX_JSON_INT = 2**63 - 1


def format_rational(q) -> str:
    """Lowest terms, positive denominator; integers drop the "/1"."""
    return str(Fraction(q))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (int, str)):
        raise ValueError(f"expected an integer or a 'num/den' string, got {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def json_int(n: int):
    """Integers beyond 64 bits become decimal strings."""
    return n if -MAX_JSON_INT - 1 <= n <= MAX_JSON_INT else str(n)


def format_place(v: Place) -> str:
    return str(v)


def format_element(g) -> str:
    return str(g)


class ReportFile(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: List[str]
    instance: Optional[Dict[str, Any]] = None
    results: Any = None
    excluded_places: List[int] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    def to_json(self) -> str:
        data = self.model_dump()
        if data["timing"] is None:
            del data["timing"]
        return json.dumps(data, indent=2) + "\n"


def _ints(values) -> list:
    return [json_int(int(x)) for x in values]


def lattice_to_dict(lattice) -> dict:
    return {
        "basis": [_ints(v) for v in lattice.basis],
        "rank": lattice.rank,
        "certified": lattice.certified,
    }


def decision_to_dict(decision) -> dict:
    return {
        "status": decision.status.value,
        "proof_case": decision.proof_case,
        "witness": _ints(decision.witness) if decision.witness is not None else None,
        "torsion": format_element(decision.torsion) if decision.torsion is not None else None,
        "reason": decision.reason,
        "certificate": lattice_to_dict(decision.certificate),
        "details": decision.details,
    }


def local_result_to_dict(result) -> dict:
    witness = None
    if result.witness is not None:
        residues, torsion = result.witness
        witness = {"residues": _ints(residues), "torsion": format_element(torsion)}
    return {
        "place": result.place,
        "solvable": result.solvable,
        "modulus": json_int(result.modulus),
        "orders": _ints(result.orders),
        "witness": witness,
        "obstruction": list(result.obstruction) if result.obstruction else None,
    }


def scan_to_dict(report) -> dict:
    return {
        "p_min": report.p_min,
        "p_max": report.p_max,
        "decision": decision_to_dict(report.decision),
        "verdict": report.verdict,
        "violations": list(report.violations),
        "scanned": len(report.results),
        "failing": len(report.failing),
        "failing_fraction": format_rational(report.failing_fraction),
        "obstructions": {str(l): count for l, count in report.obstructions.items()},
        "places": [local_result_to_dict(r) for r in report.results],
    }


def profile_to_dict(profile) -> dict:
    return {
        "coefficients": _ints(profile.form.coefficients),
        "places": [{"place": format_place(v), "solvable": ok} for v, ok in profile.entries],
        "failing": [format_place(v) for v in profile.failing],
    }


def counterexample_to_dict(result) -> dict:
    return {
        "place": result.place,
        "vector": _ints(result.vector),
        "coefficient": json_int(result.coefficient),
        "element_order": json_int(result.element_order),
        "verified": True,
    }


def positive_definite_to_dict(report) -> dict:
    return {
        "n": report.n,
        "box": report.box,
        "vectors_checked": json_int(report.vectors_checked),
        "nonzero_annihilators": 0,
        "certificates": {str(c): p for c, p in report.certificates.items()},
    }


def probe_to_dict(report) -> dict:
    data = {
        "l": report.l,
        "pattern": list(report.pattern),
        "matches": report.matches,
        "total": report.total,
        "frequency": format_rational(report.frequency),
    }
    elements = getattr(report, "elements", None)
    if elements:
        data["elements"] = list(elements)
        data["unsolvable_matches"] = report.unsolvable_matches
    return data
