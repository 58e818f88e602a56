import json

import pytest

from pgaut.modarith import GroupParams
from pgaut.verify import SUITES, Context, VerifyConfig, _low_checks, ratio_report, run_suite, verify


@pytest.fixture(scope="module")
def report331():
    return verify(GroupParams.canonical(3, 3, 1))


@pytest.fixture(scope="module")
def report341():
    return verify(GroupParams.canonical(3, 4, 1), ["aut-low"])


def _by_status(report, status):
    return {c.id for c in report.checks if c.status == status}


def test_report_schema(report331):
    d = json.loads(json.dumps(report331.as_dict()))
    assert set(d) == {"params", "constants", "checks", "stats", "version", "seed"}
    for c in d["checks"]:
        assert {"id", "anchor", "status", "ms"} <= set(c) <= {"id", "anchor", "status", "ms", "witness"}
        assert c["status"] in ("pass", "fail", "skipped")
    ids = [c["id"] for c in d["checks"]]
    assert len(ids) == len(set(ids))


def test_failures_and_skips_carry_reasons(report331):
    for c in report331.checks:
        if c.status == "fail":
            assert c.witness
        if c.status == "skipped":
            assert c.witness["reason"]


def test_deterministic_ids_and_outcomes(report331):
    again = verify(GroupParams.canonical(3, 3, 1))
    strip = lambda r: [(c.id, c.status, json.dumps(c.witness, sort_keys=True)) for c in r.checks]
    assert strip(again) == strip(report331)


def test_regime_mismatch_skips_whole_suite():
    recs = run_suite(Context(GroupParams.canonical(3, 3, 1)), "aut-high")
    assert recs and all(r.status == "skipped" and "regime" in r.witness["reason"] for r in recs)


def test_section2_at_331(report331):
    s2 = [c for c in report331.checks if c.id.startswith("s2.")]
    assert {c.status for c in s2} <= {"pass", "skipped"}
    assert [c.id for c in s2 if c.status == "skipped"] == ["s2.presentations-coincide"]


def test_section2_n2_branch():
    recs = {r.id: r for r in run_suite(Context(GroupParams.canonical(3, 2, 1)), "s2")}
    assert recs["s2.generator-count"].status == "pass"
    assert "n=2" in recs["s2.generator-count"].witness["branch"]


def test_section2_characteristic_342():
    recs = {r.id: r for r in run_suite(Context(GroupParams.canonical(3, 4, 2)), "s2")}
    assert recs["s2.characteristic"].status == "pass"
    assert recs["s2.characteristic"].witness["characteristic"] is True
    dsub = recs["s2.derived-subgroup"].witness
    assert dsub["high_readings"]["a^p, b^p, c^(p^(i-1))"] is True


def test_appendix_331(report331):
    app = [c for c in report331.checks if c.id.startswith("appendix.")]
    assert all(c.status == "pass" for c in app)
    assert report331.record("appendix.order").witness["closure"] == 486


@pytest.mark.parametrize("pni", [(3, 3, 2), (3, 4, 3)])
def test_top_suite(pni):
    recs = run_suite(Context(GroupParams.canonical(*pni)), "aut-lindop")
    assert all(r.status == "pass" for r in recs), [r.id for r in recs if r.status != "pass"]


def test_low_suite_boundary_skips(report331):
    rec = report331.record("aut-low.presentation-complete")
    assert rec.status == "skipped" and "2i+1" in rec.witness["reason"]


def test_flagged_displays_have_a_passing_reading(report341):
    zm = report341.record("aut-low.rel-zm")
    assert zm.status == "pass" and "M^h0" in zm.witness["passing"]
    uy = report341.record("aut-low.rel-uy")
    assert uy.status == "pass" and "N^(p^(n-3)) V^e Y (as printed)" in uy.witness["passing"]


def test_zm_readings_separate_at_p5():
    # g0 = h0 mod p^(n-i) when p = 3, so the readings only differ for p >= 5
    ctx = Context(GroupParams.canonical(5, 3, 1))
    entry = next(e for e in _low_checks(ctx) if e[0] == "aut-low.rel-zm")
    ok, witness = entry[2]()
    assert ok and witness["readings"] == {"M^h0": True, "M^g0": False}


def test_failing_relations_are_explained(report341):
    # the verifier reports these with an inner-automorphism correction term
    for cid in ("aut-low.rel35", "aut-low.rel40"):
        rec = report341.record(cid)
        assert rec.status == "fail" and rec.witness["holds_modulo_inner"]


def test_ratio_report_342():
    out = ratio_report(GroupParams.canonical(3, 4, 2))
    assert out["S"]["ratio"] == "6/3" and out["S"]["value"] == "2"
    assert out["U"]["ratio"] == "3/2"


def test_ratio_report_u_331():
    assert ratio_report(GroupParams.canonical(3, 3, 1))["U"]["ratio"] == "3/2"


def test_resource_guard_becomes_skip():
    cfg = VerifyConfig(aut_cap=1000)
    recs = {r.id: r for r in run_suite(Context(GroupParams.canonical(3, 3, 1), cfg), "aut-low")}
    assert recs["aut-low.order"].status == "skipped"
    assert "resource guard" in recs["aut-low.order"].witness["reason"]


def test_all_suites_listed():
    assert SUITES == ("s2", "aut-high", "aut-lindop", "aut-low", "appendix")
