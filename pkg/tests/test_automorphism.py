import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pgaut import automorphism as A
from pgaut import groups as G
from pgaut.errors import ContractError, ParameterError, ResourceGuardError
from pgaut.modarith import GroupParams, derive_appendix_constants


@pytest.fixture(scope="module")
def aut331():
    P = GroupParams.canonical(3, 3, 1)
    return A.aut_closure(list(A.low_generators(P).values()))


@pytest.fixture(scope="module")
def aut342():
    P = GroupParams.canonical(3, 4, 2)
    return A.aut_closure(list(A.high_generators(P).values()))


def test_apply_examples(p331):
    S = G.s_group(p331)
    a, b, c = S.gens()
    assert A.apply(A.identity_map(S), S.make(2, 5, 7)) == S.make(2, 5, 7)
    assert A.apply(A.inner(S, c), b) == S.make(0, 4, 0)
    U = A.low_generators(p331)["U"]
    assert A.apply(U, b) == S.make(0, 1, 1)
    with pytest.raises(ContractError):
        A.apply(A.make_map(S, (a, b, c)), a)


def test_automorphism_predicates(p331):
    S = G.s_group(p331)
    a, b, c = S.gens()
    f = A.make_map(S, (a, S.make(0, 1, 1), S.mul(S.make(-2, 0, 0), c)))
    assert A.is_homomorphism(f) and A.is_automorphism(f)
    bad = A.make_map(S, (a, b, S.make(0, 0, 2)))
    assert not A.is_homomorphism(bad)
    with pytest.raises(ContractError):
        A.checked(bad)
    ident = A.identity_map(S)
    assert A.is_homomorphism(ident) and A.is_automorphism(ident)


def test_inner_examples(p331):
    S = G.s_group(p331)
    a, b, _ = S.gens()
    assert A.inner(S, S.identity()) == A.identity_map(S)
    # a b a^-1 = [a, b] b with [a, b] = c^3
    assert A.apply(A.inner(S, a), b) == S.mul(S.make(0, 0, 3), b)


def test_orders_of_named_maps(p342, p331):
    assert A.aut_order(A.high_generators(p342)["G"]) == 2
    P = GroupParams.canonical(5, 4, 2)
    assert A.aut_order(A.high_generators(P)["G"]) == 4
    assert A.aut_order(A.appendix_generators(p331)["alpha"]) == 3


def test_compose_and_inverse(p342):
    gens = A.high_generators(p342)
    S = G.s_group(p342)
    ident = A.identity_map(S)
    D, E = gens["D"], gens["E"]
    assert A.compose(D, ident) == D
    assert A.compose(D, A.inverse(D)) == ident
    ag = A.aut_group(S)
    x = S.make(2, 3, 5)
    assert A.apply(A.compose(D, E), x) == A.apply(D, A.apply(E, x))
    assert ag.mul(D.key, E.key) == A.compose(D, E).key
    assert A.power(D, A.aut_order(D)) == ident


@given(st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=40)
def test_inverse_by_table_matches_power_iteration(j, k):
    P = GroupParams.canonical(3, 3, 1)
    ag = A.aut_group(G.s_group(P))
    gens = list(A.low_generators(P).values())
    f = ag.mul(gens[j % len(gens)].key, gens[k % len(gens)].key)
    assert ag.inv(f) == ag.pow(f, ag.element_order(f) - 1)


def test_closure_sizes(aut331, aut342, p331):
    assert len(aut331) == 13122
    assert len(aut342) == 78732
    S = G.s_group(p331)
    assert len(A.aut_closure([A.identity_map(S)])) == 1
    inn = A.aut_closure([A.low_generators(p331)[k] for k in "LMN"])
    assert len(inn) == 27 == 243 // 9
    with pytest.raises(ResourceGuardError):
        A.aut_closure(list(A.low_generators(p331).values()), cap=100)


def test_top_family_closures():
    for pni, want in (((3, 3, 2), 1296), ((3, 4, 3), 3888)):
        P = GroupParams.canonical(*pni)
        assert len(A.aut_closure(list(A.top_generators(P).values()))) == want


def test_family_regime_guards(p331, p342):
    with pytest.raises(ParameterError):
        A.high_generators(p331)
    with pytest.raises(ParameterError):
        A.low_generators(p342)
    with pytest.raises(ParameterError):
        A.top_generators(p342)


def test_kernels(aut342, p342):
    kg = A.kernel_gamma(aut342)
    assert len(kg) == 3**9
    S = G.s_group(p342)
    kl = A.kernel_lambda_pointwise(aut342)
    gen = A.make_map(S, (S.make(1, 0, 0), S.make(0, 1, 0), S.make(0, 0, 1 + 9)))
    assert len(kl) == 3 and gen.key in kl and A.is_automorphism(gen)


def test_quotient_order_332():
    P = GroupParams.canonical(3, 3, 2)
    S = G.s_group(P)
    auts = A.aut_closure(list(A.top_generators(P).values()))
    inn = A.aut_closure([A.inner(S, g) for g in S.gens()])
    assert A.quotient_order(auts, inn) == 1296 // len(inn) == 144


def test_frattini_rank_of_sylow(p342):
    gens = A.high_generators(p342)
    pi = A.aut_closure([gens[k] for k in "ABCDEF"])
    assert A.frattini_rank_autgroup(pi) == 6
    triv = A.aut_closure([A.identity_map(G.AbelianGroup(()))])
    assert A.frattini_rank_autgroup(triv) == 0


def test_normality(aut331, p331):
    inn = A.aut_closure([A.low_generators(p331)[k] for k in "LMN"])
    ok, witness = A.is_normal(aut331, inn)
    assert ok and witness is None
    u = A.aut_closure([A.low_generators(p331)["U"]])
    ok, witness = A.is_normal(aut331, u)
    assert not ok and witness is not None


def test_serialization_round_trip(aut331, tmp_path):
    text = A.autset_to_json(aut331)
    back = A.autset_from_json(text)
    assert back.same_elements(aut331)
    assert A.autset_to_json(back) == text
    header = json.loads(text)
    assert header["count"] == 13122 and header["format_version"] == A.FORMAT_VERSION
    path = tmp_path / "a.json"
    A.write_atomic(path, text)
    assert path.read_text() == text


def test_restriction_to_t_gives_aut_t():
    P = GroupParams.canonical(3, 3, 2)
    res = [A.restrict_to_t(f) for k, f in A.top_generators(P).items() if k != "G"]
    assert len(A.aut_closure(res)) == 432


def test_appendix_generators_are_automorphisms(p331):
    consts = derive_appendix_constants(3, 3, 1)
    gens = A.appendix_generators(p331, consts)
    assert all(f.status == "aut" for f in gens.values())
    auts = A.aut_closure([gens[k] for k in ("alpha", "delta_x", "mu")])
    assert len(auts) == 486


@pytest.mark.parametrize("r", [1, 2, 4, 5, 7, 26])
def test_omega_is_automorphism(p331, r):
    f = A.omega(p331, r)
    U = G.u_group(p331)
    assert A.apply(f, U.make(1, 0)) == U.make(r, 0)


def test_contains_and_filter(aut331):
    keys = aut331.keys()[:5]
    assert aut331.contains_keys(keys).all()
    sub = aut331.filter(np.arange(len(aut331)) < 10, "first ten")
    assert len(sub) == 10 and sub.issubset(aut331)
