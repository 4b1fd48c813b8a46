"""Corpus verification campaigns behind the CLI subcommands.

Each campaign scans a corpus of graph6 lines (built-in enumeration or a
file), applies a per-graph worker, and folds the records into a
deterministic VerificationReport: records are sorted by graph6 string, so
the report is independent of worker count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

from . import kernels
from .dh import METRIC_ORACLE_MAX, dh_metric_oracle, recognize_dh, replay_trace
from .errors import CapacityError, Graph6ParseError
from .extremal import check_path_extremal
from .forcing import is_forcing, is_fort
from .graphs import (
    Graph,
    classify_kind,
    enumerate_graphs,
    induced_subgraph,
    is_connected,
    parse_graph6,
    write_graph6,
)
from .splitdec import (
    decompose,
    extract_prime_core,
    find_split,
    peel,
    pick_peelable_bag,
    reconstruct,
    summarize,
    twin_from_leaf_bag,
    validate_reduced,
)

VERIFIED = "verified"
SKIPPED = "skipped"
COUNTEREXAMPLE = "counterexample"
ANOMALY = "anomaly"


@dataclass
class VerificationReport:
    campaign: str
    corpus: dict
    scanned: int = 0
    verified: int = 0
    skipped: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    phases: Optional[dict] = None
    timing_seconds: float = 0.0

    @property
    def totals(self) -> dict:
        return {
            "scanned": self.scanned,
            "verified": self.verified,
            "skipped": len(self.skipped),
            "counterexamples": len(self.counterexamples),
        }

    @property
    def clean(self) -> bool:
        return not self.counterexamples and not self.anomalies

    def exit_code(self) -> int:
        if self.counterexamples:
            return 2
        if self.anomalies:
            return 1
        return 0

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "campaign": self.campaign,
            "corpus": self.corpus,
            "totals": self.totals,
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
            "anomalies": self.anomalies,
        }
        if self.phases is not None:
            out["phases"] = self.phases
        if include_timing:
            out["timing_seconds"] = self.timing_seconds
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)

    def normalized_json(self) -> str:
        """Byte-stable form for determinism comparisons (timing excluded)."""
        return json.dumps(self.to_dict(include_timing=False), sort_keys=True)


def builtin_corpus(n_max: int, connected: bool = True, n_min: int = 1) -> list[str]:
    lines = []
    for n in range(n_min, n_max + 1):
        for g in enumerate_graphs(n, connected_only=connected):
            lines.append(write_graph6(g))
    return lines


def load_corpus(path: str) -> list[str]:
    with open(path, "r", encoding="ascii") as fh:
        return [ln.strip() for ln in fh if ln.strip()]


def _run_scan(items: list[str], worker: Callable, jobs: int) -> list[dict]:
    if jobs > 1 and len(items) > 1:
        chunk = max(1, len(items) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(worker, items, chunksize=chunk))
    else:
        records = [worker(it) for it in items]
    records.sort(key=lambda r: r["graph6"])
    return records


def _fold(report: VerificationReport, records: list[dict]) -> None:
    for rec in records:
        report.scanned += 1
        status = rec["status"]
        if status == VERIFIED:
            report.verified += 1
        elif status == SKIPPED:
            report.skipped.append({"graph6": rec["graph6"], "reason": rec["reason"]})
        elif status == COUNTEREXAMPLE:
            report.counterexamples.append(
                {
                    "graph6": rec["graph6"],
                    "witness_k": rec.get("witness_k"),
                    "margins": rec.get("margins", []),
                    "reason": rec.get("reason", ""),
                }
            )
        else:
            report.anomalies.append(
                {"graph6": rec["graph6"], "reason": rec["reason"]}
            )


def _parse_or_skip(line: str):
    try:
        return parse_graph6(line), None
    except (Graph6ParseError, CapacityError) as exc:
        return None, {"graph6": line, "status": SKIPPED, "reason": f"parse: {exc}"}


# --- verify-dh ----------------------------------------------------------------


def _dh_worker(line: str, budget: Optional[int]) -> dict:
    g, err = _parse_or_skip(line)
    if err:
        return err
    if not is_connected(g):
        return {"graph6": line, "status": SKIPPED, "reason": "disconnected"}
    if g.n > METRIC_ORACLE_MAX:
        return {
            "graph6": line,
            "status": SKIPPED,
            "reason": f"metric oracle capped at n={METRIC_ORACLE_MAX}",
        }
    trace = recognize_dh(g)
    oracle = dh_metric_oracle(g)
    if (trace is not None) != oracle:
        return {
            "graph6": line,
            "status": ANOMALY,
            "reason": "recognizers disagree (greedy vs metric oracle)",
        }
    if trace is None:
        return {"graph6": line, "status": SKIPPED, "reason": "not distance-hereditary"}
    if replay_trace(trace) != g:
        return {
            "graph6": line,
            "status": ANOMALY,
            "reason": "elimination trace does not replay to the input",
        }
    try:
        verdict = check_path_extremal(g, budget)
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    if verdict.is_path_extremal:
        return {"graph6": line, "status": VERIFIED}
    return {
        "graph6": line,
        "status": COUNTEREXAMPLE,
        "witness_k": verdict.witness_k,
        "margins": list(verdict.margins),
        "reason": "distance-hereditary graph not path-extremal",
    }


def verify_dh(
    n_max: Optional[int] = None,
    g6_file: Optional[str] = None,
    jobs: int = 1,
    budget: Optional[int] = None,
) -> VerificationReport:
    """Check that every connected distance-hereditary graph in the
    corpus is path-extremal.  Recognizer disagreements surface as anomalies,
    never as counterexamples."""
    if g6_file:
        corpus = load_corpus(g6_file)
        descr = {"source": g6_file}
    else:
        n_max = 8 if n_max is None else n_max
        corpus = builtin_corpus(n_max)
        descr = {"source": "builtin", "n_max": n_max, "connected": True}
    report = VerificationReport("verify-dh", descr)
    t0 = time.perf_counter()
    records = _run_scan(corpus, partial(_dh_worker, budget=budget), jobs)
    _fold(report, records)
    report.timing_seconds = time.perf_counter() - t0
    return report


# --- split-decomposition round trip --------------------------------------------


def _roundtrip_worker(line: str, budget: Optional[int]) -> dict:
    g, err = _parse_or_skip(line)
    if err:
        return err
    if not is_connected(g):
        return {"graph6": line, "status": SKIPPED, "reason": "disconnected"}
    try:
        tree = decompose(g, budget)
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    problems = []
    if reconstruct(tree) != g:
        problems.append("reconstruct(decompose(g)) differs from g")
    violations = validate_reduced(tree)
    if violations:
        problems.append("not reduced: " + "; ".join(violations))
    if g.n <= METRIC_ORACLE_MAX:
        summary = summarize(tree)
        if summary.is_dh != dh_metric_oracle(g):
            problems.append("prime-bag-free does not match the metric oracle")
    if problems:
        return {
            "graph6": line,
            "status": COUNTEREXAMPLE,
            "reason": "; ".join(problems),
        }
    return {"graph6": line, "status": VERIFIED}


def verify_split_roundtrip(
    n_max: Optional[int] = None,
    g6_file: Optional[str] = None,
    jobs: int = 1,
    budget: Optional[int] = None,
) -> VerificationReport:
    """Decompose every corpus graph, re-reconstruct, check reducedness, and
    cross-check prime-bag-freeness against the metric DH oracle."""
    if g6_file:
        corpus = load_corpus(g6_file)
        descr = {"source": g6_file}
    else:
        n_max = 8 if n_max is None else n_max
        corpus = builtin_corpus(n_max)
        descr = {"source": "builtin", "n_max": n_max, "connected": True}
    report = VerificationReport("verify-split-roundtrip", descr)
    t0 = time.perf_counter()
    records = _run_scan(corpus, partial(_roundtrip_worker, budget=budget), jobs)
    _fold(report, records)
    report.timing_seconds = time.perf_counter() - t0
    return report


# --- verify-unique-prime --------------------------------------------------------


def split_prime_graphs(m: int) -> list[Graph]:
    """All split-prime graphs on at most m vertices (connected, no split,
    neither clique nor star)."""
    out = []
    for n in range(1, m + 1):
        for g in enumerate_graphs(n, connected_only=True):
            if classify_kind(g).tag != "other":
                continue
            if find_split(g) is None:
                out.append(g)
    return out


def _induced_subgraph_classes(g: Graph) -> list[Graph]:
    seen = set()
    out = []
    for mask in range(1, g.full_mask + 1):
        sub, _ = induced_subgraph(g, mask)
        key = kernels.canon_adj(sub.n, sub.adj)
        if key not in seen:
            seen.add(key)
            out.append(Graph(sub.n, key))
    return out


def _unique_prime_worker(line: str, m: int, budget: Optional[int],
                         split_budget: Optional[int]) -> dict:
    g, err = _parse_or_skip(line)
    if err:
        return err
    if not is_connected(g):
        return {"graph6": line, "status": SKIPPED, "reason": "disconnected"}
    try:
        tree = decompose(g, split_budget)
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    summary = summarize(tree)
    if summary.prime_bag_count != 1:
        return {
            "graph6": line,
            "status": SKIPPED,
            "reason": f"prime bag count {summary.prime_bag_count} != 1",
        }
    size = summary.prime_labels[0].n
    if size > m:
        return {
            "graph6": line,
            "status": SKIPPED,
            "reason": f"prime bag size {size} exceeds m={m}",
        }
    try:
        verdict = check_path_extremal(g, budget)
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    if verdict.is_path_extremal:
        return {"graph6": line, "status": VERIFIED}
    return {
        "graph6": line,
        "status": COUNTEREXAMPLE,
        "witness_k": verdict.witness_k,
        "margins": list(verdict.margins),
        "reason": "unique-prime graph not path-extremal",
    }


def verify_unique_prime(
    n_max: int = 8,
    m: int = 5,
    jobs: int = 1,
    budget: Optional[int] = None,
    split_budget: Optional[int] = None,
    g6_file: Optional[str] = None,
) -> VerificationReport:
    """Finite verification of the bounded-prime-core reduction.

    Phase 1 discharges the hypothesis: every induced subgraph of every
    split-prime graph on <= m vertices is path-extremal.  Phase 2 checks the
    conclusion on the corpus: every connected graph whose decomposition has
    exactly one prime bag of size <= m is path-extremal.
    """
    descr = {
        "source": g6_file or "builtin",
        "n_max": n_max,
        "m": m,
        "connected": True,
    }
    report = VerificationReport("verify-unique-prime", descr)
    t0 = time.perf_counter()

    phase1 = {"scanned": 0, "verified": 0, "prime_graphs": [], "subgraph_classes": 0}
    for h in split_prime_graphs(m):
        report.scanned += 1
        phase1["scanned"] += 1
        phase1["prime_graphs"].append(write_graph6(h))
        bad = None
        for sub in _induced_subgraph_classes(h):
            phase1["subgraph_classes"] += 1
            verdict = check_path_extremal(sub, budget)
            if not verdict.is_path_extremal:
                bad = (sub, verdict)
                break
        if bad is None:
            report.verified += 1
            phase1["verified"] += 1
        else:
            sub, verdict = bad
            report.counterexamples.append(
                {
                    "graph6": write_graph6(h),
                    "witness_k": verdict.witness_k,
                    "margins": list(verdict.margins),
                    "reason": f"induced subgraph {verdict.graph6} not path-extremal",
                    "phase": 1,
                }
            )

    corpus = load_corpus(g6_file) if g6_file else builtin_corpus(n_max)
    records = _run_scan(
        corpus,
        partial(_unique_prime_worker, m=m, budget=budget, split_budget=split_budget),
        jobs,
    )
    phase2 = {"scanned": len(records), "verified": 0}
    before_cx = len(report.counterexamples)
    for rec in records:
        if rec["status"] == VERIFIED:
            phase2["verified"] += 1
    _fold(report, records)
    for cx in report.counterexamples[before_cx:]:
        cx["phase"] = 2
    report.phases = {"phase1": phase1, "phase2": phase2}
    report.timing_seconds = time.perf_counter() - t0
    return report


# --- audit-lemmas ----------------------------------------------------------------


def _leaf_audit_worker(line: str, budget: Optional[int]) -> dict:
    from .extremal import audit_leaf_recurrence

    g, err = _parse_or_skip(line)
    if err:
        return err
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if not leaves:
        return {"graph6": line, "status": SKIPPED, "reason": "no leaves"}
    try:
        for x in leaves:
            audit = audit_leaf_recurrence(g, x, budget=budget)
            if not audit.holds:
                bad = next(r for r in audit.rows if not r.holds)
                return {
                    "graph6": line,
                    "status": COUNTEREXAMPLE,
                    "witness_k": bad.k,
                    "margins": [],
                    "reason": f"leaf recurrence fails at leaf {x}, k={bad.k}",
                }
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    return {"graph6": line, "status": VERIFIED}


def _fort_audit_worker(line: str) -> dict:
    g, err = _parse_or_skip(line)
    if err:
        return err
    full = g.full_mask
    for f in range(1, full + 1):
        if not is_fort(g, f):
            continue
        outside = full & ~f
        sub = outside
        while True:
            if is_forcing(g, sub):
                return {
                    "graph6": line,
                    "status": COUNTEREXAMPLE,
                    "witness_k": sub.bit_count(),
                    "margins": [],
                    "reason": f"set avoiding fort {f:#x} is forcing",
                }
            if sub == 0:
                break
            sub = (sub - 1) & outside
    return {"graph6": line, "status": VERIFIED}


def _peel_extract_worker(line: str, split_budget: Optional[int]) -> dict:
    g, err = _parse_or_skip(line)
    if err:
        return err
    if not is_connected(g):
        return {"graph6": line, "status": SKIPPED, "reason": "disconnected"}
    try:
        tree = decompose(g, split_budget)
    except CapacityError as exc:
        return {"graph6": line, "status": SKIPPED, "reason": str(exc)}
    summary = summarize(tree)
    if summary.prime_bag_count != 1:
        return {
            "graph6": line,
            "status": SKIPPED,
            "reason": f"prime bag count {summary.prime_bag_count} != 1",
        }
    try:
        if summary.star_centered_at_prime:
            extract_prime_core(tree)  # verifies internally
        else:
            bag = pick_peelable_bag(tree)
            if bag is None:
                return {
                    "graph6": line,
                    "status": ANOMALY,
                    "reason": "non-star-centered tree with no far leaf bag",
                }
            if twin_from_leaf_bag(tree, bag) is None:
                peel(tree, bag)  # verifies internally
    except Exception as exc:  # InvariantViolation and kin become violations
        return {
            "graph6": line,
            "status": COUNTEREXAMPLE,
            "witness_k": None,
            "margins": [],
            "reason": f"{type(exc).__name__}: {exc}",
        }
    return {"graph6": line, "status": VERIFIED}


def audit_peel_extract(
    n_max: int = 8,
    jobs: int = 1,
    split_budget: Optional[int] = None,
) -> VerificationReport:
    """Peel and prime-core reductions over the unique-prime corpus: every
    peel must reconstruct G-x and G-{x,c} with the prime label intact, and
    every star-centered tree must extract a core Q with G = Q + pendants."""
    descr = {"source": "builtin", "n_max": n_max, "connected": True}
    report = VerificationReport("audit-peel-extract", descr)
    t0 = time.perf_counter()
    corpus = builtin_corpus(n_max)
    records = _run_scan(
        corpus, partial(_peel_extract_worker, split_budget=split_budget), jobs
    )
    _fold(report, records)
    report.timing_seconds = time.perf_counter() - t0
    return report


FORT_AUDIT_MAX = 5


def audit_lemmas(
    n_max: int = 6,
    jobs: int = 1,
    budget: Optional[int] = None,
    split_budget: Optional[int] = None,
) -> VerificationReport:
    """Executable lemma audits: the leaf recurrence on every connected graph
    with a leaf, fort avoidance exhaustively at n <= 5, and the peel /
    prime-core reductions on the unique-prime corpus."""
    descr = {"source": "builtin", "n_max": n_max, "fort_n_max": FORT_AUDIT_MAX}
    report = VerificationReport("audit-lemmas", descr)
    t0 = time.perf_counter()
    phases = {}

    corpus = builtin_corpus(n_max)
    records = _run_scan(corpus, partial(_leaf_audit_worker, budget=budget), jobs)
    phases["leaf_recurrence"] = {
        "scanned": len(records),
        "verified": sum(r["status"] == VERIFIED for r in records),
    }
    _fold(report, records)

    fort_corpus = []
    for n in range(1, min(n_max, FORT_AUDIT_MAX) + 1):
        for g in enumerate_graphs(n):
            fort_corpus.append(write_graph6(g))
    records = _run_scan(fort_corpus, _fort_audit_worker, jobs)
    phases["fort_avoidance"] = {
        "scanned": len(records),
        "verified": sum(r["status"] == VERIFIED for r in records),
    }
    _fold(report, records)

    records = _run_scan(
        corpus, partial(_peel_extract_worker, split_budget=split_budget), jobs
    )
    phases["peel_extract"] = {
        "scanned": len(records),
        "verified": sum(r["status"] == VERIFIED for r in records),
    }
    _fold(report, records)

    report.phases = phases
    report.timing_seconds = time.perf_counter() - t0
    return report
