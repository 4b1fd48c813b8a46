"""campaigns: report shape, corpus handling, shard invariance."""

from __future__ import annotations

import json

from zfx.campaigns import (
    audit_lemmas,
    audit_peel_extract,
    builtin_corpus,
    split_prime_graphs,
    verify_dh,
    verify_split_roundtrip,
    verify_unique_prime,
)
from zfx.graphs import are_isomorphic, make_cycle, parse_graph6, write_graph6


def _check_report_invariants(report):
    assert report.scanned == (
        report.verified
        + len(report.counterexamples)
        + len(report.skipped)
        + len(report.anomalies)
    )
    payload = json.loads(report.to_json())
    assert payload["campaign"] == report.campaign
    assert payload["totals"]["scanned"] == report.scanned
    assert "timing_seconds" in payload
    assert "timing_seconds" not in json.loads(report.normalized_json())


def test_builtin_corpus_counts():
    assert len(builtin_corpus(5)) == 31
    assert len(builtin_corpus(5, connected=False)) == 52
    for line in builtin_corpus(4):
        parse_graph6(line)


def test_split_prime_graphs():
    assert split_prime_graphs(4) == []
    primes = split_prime_graphs(5)
    assert len(primes) == 3
    assert any(are_isomorphic(h, make_cycle(5)) for h in primes)


def test_verify_dh_report_shape():
    r = verify_dh(n_max=5)
    _check_report_invariants(r)
    assert r.clean and r.exit_code() == 0
    assert r.corpus == {"source": "builtin", "n_max": 5, "connected": True}


def test_verify_dh_file_corpus(tmp_path):
    f = tmp_path / "mixed.g6"
    f.write_text("DhC\nDLo\nC?\nnot-a-graph\n")
    r = verify_dh(g6_file=str(f))
    _check_report_invariants(r)
    assert r.verified == 1  # P_5
    reasons = sorted(s["reason"] for s in r.skipped)
    assert any("not distance-hereditary" in x for x in reasons)  # C_5
    assert any("disconnected" in x for x in reasons)  # empty graph on 4
    assert any(x.startswith("parse") for x in reasons)


def test_roundtrip_report():
    r = verify_split_roundtrip(n_max=5)
    _check_report_invariants(r)
    assert r.verified == r.scanned == 31


def test_unique_prime_report():
    r = verify_unique_prime(n_max=6, m=5)
    _check_report_invariants(r)
    assert r.phases["phase1"]["scanned"] == 3
    assert r.phases["phase2"]["scanned"] == 143
    # phase-2 verified graphs are exactly those with one small prime bag
    assert r.phases["phase2"]["verified"] == 24


def test_audit_lemmas_report():
    r = audit_lemmas(n_max=5)
    _check_report_invariants(r)
    assert r.clean
    assert set(r.phases) == {"leaf_recurrence", "fort_avoidance", "peel_extract"}


def test_audit_peel_extract_small():
    r = audit_peel_extract(n_max=6)
    _check_report_invariants(r)
    assert r.clean and r.verified > 0


def test_shard_invariance_small():
    a = verify_unique_prime(n_max=5, m=5, jobs=1)
    b = verify_unique_prime(n_max=5, m=5, jobs=3)
    assert a.normalized_json() == b.normalized_json()
    c = audit_lemmas(n_max=4, jobs=1)
    d = audit_lemmas(n_max=4, jobs=2)
    assert c.normalized_json() == d.normalized_json()


def test_corpus_lines_round_trip():
    for line in builtin_corpus(5):
        assert write_graph6(parse_graph6(line)) == line
