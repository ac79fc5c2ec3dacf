from app.localglobal.counterexample import (
    CounterexampleResult,
    PositiveDefiniteReport,
    counterexample_rank_n,
    positive_definite_check,
)
from app.localglobal.decide import (
    DecisionStatus,
    GlobalDecision,
    global_decide,
    global_decide_rank2,
    global_decide_rank3,
)
from app.localglobal.instance import Instance, make_instance
from app.localglobal.local import LocalResult, local_solvable, local_solvable_bruteforce
from app.localglobal.probes import (
    ProbeReport,
    ProofPatternReport,
    probe_assumption1,
    probe_assumption2,
    probe_proof_pattern,
)
from app.localglobal.scan import CONSISTENT, VIOLATION, ScanReport, scan

__all__ = [
    "CONSISTENT",
    "CounterexampleResult",
    "DecisionStatus",
    "GlobalDecision",
    "Instance",
    "LocalResult",
    "PositiveDefiniteReport",
    "ProbeReport",
    "ProofPatternReport",
    "ScanReport",
    "VIOLATION",
    "counterexample_rank_n",
    "global_decide",
    "global_decide_rank2",
    "global_decide_rank3",
    "local_solvable",
    "local_solvable_bruteforce",
    "make_instance",
    "positive_definite_check",
    "probe_assumption1",
    "probe_assumption2",
    "probe_proof_pattern",
    "scan",
]
