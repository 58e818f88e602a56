"""One test per acceptance criterion, at exact equality, with its runtime budget."""
import time

import numpy as np
import pytest

from pgaut import automorphism as A
from pgaut import groups as G
from pgaut import oracle as O
from pgaut.modarith import GroupParams
from pgaut.verify import _BUILDERS, Context, Skip, run_suite

P = GroupParams.canonical


def _closure(params):
    return A.aut_closure(list(A.named_generators(params, A.family_for(params)).values()))


def _t_in_s(S, params):
    return G.closure_idx(S, [S.index(S.make(1, 0, 0)), S.index(S.make(0, 1, 0)),
                             S.index(S.make(0, 0, params.comm_step))])


@pytest.mark.criterion(1)
def test_group_orders():
    t0 = time.perf_counter()
    got = {
        "S(3,3,1)": len(G.s_group(P(3, 3, 1)).elements()),
        "S(3,4,2)": len(G.s_group(P(3, 4, 2)).elements()),
        "S(3,3,2)": len(G.s_group(P(3, 3, 2)).elements()),
        "T(3,3,2)": len(G.t_group(P(3, 3, 2)).elements()),
    }
    want = {"S(3,3,1)": 243, "S(3,4,2)": 2187, "S(3,3,2)": 81, "T(3,3,2)": 27}
    formulas = all(len(set(G.s_group(P(*t)).elements())) == G.group_order(P(*t), "S")
                   and len(set(G.t_group(P(*t)).elements())) == G.group_order(P(*t), "T")
                   for t in ((3, 3, 1), (3, 4, 2), (3, 3, 2), (3, 4, 1), (3, 4, 3)))
    elapsed = time.perf_counter() - t0
    assert got == want
    assert formulas
    assert elapsed < 1.0


@pytest.mark.criterion(2)
def test_aut_orders_by_closure():
    want = {(3, 3, 1): 13122, (3, 4, 2): 78732, (3, 3, 2): 1296, (3, 4, 3): 3888}
    for pni, size in want.items():
        t0 = time.perf_counter()
        got = len(_closure(P(*pni)))
        assert got == size, pni
        assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(3)
def test_oracle_equivalence():
    t0 = time.perf_counter()
    for pni in ((3, 3, 1), (3, 3, 2), (3, 4, 2)):
        params = P(*pni)
        brute, _ = O.brute_force_aut(G.s_group(params))
        closure = _closure(params)
        assert len(brute) == len(closure), pni
        assert np.array_equal(brute.codes, closure.codes), pni
    assert time.perf_counter() - t0 < 600


@pytest.mark.criterion(4)
def test_appendix():
    t0 = time.perf_counter()
    sizes = {}
    for pni in ((3, 3, 1), (3, 4, 2)):
        ctx = Context(P(*pni))
        sizes[pni] = len(ctx.u_aut)
        p, n, i = pni
        j = i if 2 * i <= n else n - i
        assert A.quotient_order(ctx.u_aut, ctx.u_inn) == p ** (i + j - 1) * (p - 1), pni
        assert len(ctx.s0) == G.group_order(ctx.params, "S"), pni
        recs = {r.id: r for r in run_suite(ctx, "appendix") if r.id in ("appendix.sylow-iso", "appendix.sylow")}
        assert recs["appendix.sylow-iso"].status == "pass", pni
        assert recs["appendix.sylow"].status == "pass", pni
    assert sizes == {(3, 3, 1): 486, (3, 4, 2): 4374}
    assert len(Context(P(3, 3, 1)).u_inn) == 81
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(5)
def test_structure():
    t0 = time.perf_counter()
    results = {}

    c342 = Context(P(3, 4, 2))
    results["ker Gamma = Pi (3,4,2)"] = A.kernel_gamma(c342.aut).same_elements(c342.sub("ABCDEF"))
    results["|ker Lambda| = p^(i-1) (3,4,2)"] = len(A.kernel_lambda_pointwise(c342.aut)) == 3
    results["z(Pi) = 6 (3,4,2)"] = A.frattini_rank_autgroup(c342.sub("ABCDEF")) == 6

    c343 = Context(P(3, 4, 3))
    results["|ker Lambda| = p^(n-2) (3,4,3)"] = len(A.kernel_lambda_pointwise(c343.aut)) == 9

    c341 = Context(P(3, 4, 1))
    results["ker Gamma = Phi (3,4,1)"] = A.kernel_gamma(c341.aut).same_elements(c341.sub("LMNVWXY"))
    results["z(Pi) = 7 (3,4,1)"] = A.frattini_rank_autgroup(c341.sub("LMNUVWXY")) == 7
    results["G not normal (3,4,1)"] = not A.is_normal(c341.aut, c341.sub("LMNVWXYZ"))[0]

    for pni in ((3, 3, 1), (3, 4, 2), (3, 4, 1)):
        results[f"z(S) = 3 {pni}"] = G.frattini_rank(G.s_group(P(*pni)), 3) == 3
    for pni in ((3, 3, 1), (3, 4, 2)):
        S = G.s_group(P(*pni))
        results[f"no complement of T {pni}"] = O.complement_search(S, _t_in_s(S, P(*pni))) is None

    failed = [k for k, ok in results.items() if not ok]
    assert not failed, f"failed: {failed}"
    assert time.perf_counter() - t0 < 300


PROPERTY_CHECKS = {
    (3, 3, 1): ["s2.associativity", "s2.binomial-congruence", "s2.power-shape", "aut-low.geometric-sum",
                "appendix.valuation", "appendix.element-order", "appendix.normal-cyclic"],
    (3, 4, 2): ["s2.associativity", "s2.power-shape", "appendix.element-order", "appendix.normal-cyclic"],
}


@pytest.mark.criterion(6)
def test_property_suites():
    t0 = time.perf_counter()
    for pni, ids in PROPERTY_CHECKS.items():
        ctx = Context(P(*pni))
        for suite in sorted({cid.split(".")[0] for cid in ids}):
            entries = {cid: fn for cid, _, fn in _entries(ctx, suite) if cid in ids}
            for cid, fn in entries.items():
                ok, witness = fn()
                assert ok, (pni, cid, witness)
    # associativity is exhaustive at |S| = 243 and sampled with 10^5 triples above that
    ctx = Context(P(3, 3, 1))
    assert dict(_entries(ctx, "s2", anchors=False))["s2.associativity"]()[1]["S"]["triples"] == 243**3
    ctx = Context(P(3, 4, 2))
    assert dict(_entries(ctx, "s2", anchors=False))["s2.associativity"]()[1]["S"]["triples"] == 10**5
    assert time.perf_counter() - t0 < 120


def _entries(ctx, suite, anchors=True):
    out = _BUILDERS[suite](ctx)
    return out if anchors else [(cid, fn) for cid, _, fn in out]


RELATION_RUNS = [((3, 4, 2), "aut-high"), ((3, 3, 2), "aut-lindop"), ((3, 4, 3), "aut-lindop"),
                 ((3, 3, 1), "aut-low"), ((3, 4, 1), "aut-low"), ((3, 3, 1), "appendix"), ((3, 4, 2), "appendix")]
FLAGGED = {"aut-low.rel-zm", "aut-low.rel-uy"}


def _is_relation(cid):
    tail = cid.split(".", 1)[1]
    return tail.startswith("rel") or tail.startswith("sylow-rel")


@pytest.mark.criterion(7)
def test_displayed_relations():
    failing = []
    for pni, suite in RELATION_RUNS:
        for cid, anchor, fn in _entries(Context(P(*pni)), suite):
            if not _is_relation(cid):
                continue
            try:
                ok, witness = fn()
            except Skip:  # side condition not met at these parameters
                continue
            if cid in FLAGGED:
                assert witness["passing"], (pni, cid, witness)
                continue
            if not ok:
                assert witness, (pni, cid)
                failing.append((pni, cid, anchor))
    assert not failing, f"displayed relations that fail: {failing}"
