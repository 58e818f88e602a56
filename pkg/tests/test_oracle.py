import numpy as np
import pytest

from pgaut import automorphism as A
from pgaut import groups as G
from pgaut import oracle as O
from pgaut.errors import ParameterError, ResourceGuardError
from pgaut.modarith import GroupParams


def test_trivial_group():
    auts, stats = O.brute_force_aut(G.AbelianGroup(()))
    assert len(auts) == 1


def test_small_abelian_groups():
    # Aut(Z/9) has order 6, Aut(Z/3 x Z/3) = GL(2, 3) has order 48
    assert len(O.brute_force_aut(G.AbelianGroup((9,)))[0]) == 6
    assert len(O.brute_force_aut(G.AbelianGroup((3, 3)))[0]) == 48


@pytest.mark.parametrize("generation", ["bijection", "closure"])
def test_brute_force_matches_closure_331(p331, generation):
    brute, stats = O.brute_force_aut(G.s_group(p331), generation=generation)
    closure = A.aut_closure(list(A.low_generators(p331).values()))
    assert brute.same_elements(closure)
    assert stats.found == 13122 and stats.candidates > 0
    assert set(stats.as_dict()) >= {"candidates", "relation_failures", "generation_failures", "found", "elapsed"}


def test_brute_force_matches_closure_332(p332):
    brute, _ = O.brute_force_aut(G.s_group(p332))
    assert brute.same_elements(A.aut_closure(list(A.top_generators(p332).values())))
    assert len(brute) == 1296


def test_partitioning_does_not_change_result(p331):
    U = G.u_group(p331)
    one, _ = O.brute_force_aut(U)
    two, _ = O.brute_force_aut(U, threads=2)
    assert np.array_equal(one.codes, two.codes) and len(one) == 486


def test_guards(p331):
    with pytest.raises(ResourceGuardError):
        O.brute_force_aut(G.s_group(p331), max_group=100)
    with pytest.raises(ResourceGuardError):
        O.brute_force_aut(G.s_group(p331), max_aut=1000)
    with pytest.raises(ParameterError):
        O.brute_force_aut(G.u_group(p331), generation="magic")


def test_center_scan(p331):
    S = G.s_group(p331)
    z = O.brute_force_center(S)
    assert z.size == 9
    assert np.array_equal(z, G.center_idx(S))


def test_derived_scan(p331, p342):
    for P in (p331, p342):
        S = G.s_group(P)
        assert np.array_equal(O.brute_force_derived(S), G.derived_subgroup_idx(S))


@pytest.mark.parametrize("pni", [(3, 3, 1), (3, 4, 2)])
def test_no_complement_of_t(pni):
    P = GroupParams.canonical(*pni)
    S = G.s_group(P)
    t = G.closure_idx(S, [S.index(S.make(1, 0, 0)), S.index(S.make(0, 1, 0)),
                          S.index(S.make(0, 0, P.comm_step))])
    assert O.complement_search(S, t) is None


def test_complement_in_u(p331):
    U = G.u_group(p331)
    x = G.closure_idx(U, [U.index(U.make(1, 0))])
    u = O.complement_search(U, x)
    assert u == U.make(0, 1)
    with pytest.raises(ParameterError):
        O.complement_search(U, G.closure_idx(U, [U.index(U.make(0, 1))]))


def test_characteristic_check(p331, p342):
    S = G.s_group(p342)
    auts, _ = O.brute_force_aut(S)
    t = G.closure_idx(S, [S.index(S.make(1, 0, 0)), S.index(S.make(0, 1, 0)), S.index(S.make(0, 0, 3))])
    assert O.characteristic_check(auts, t) == (True, None)
    assert O.characteristic_check(auts, np.arange(S.order))[0]

    S = G.s_group(p331)
    auts, _ = O.brute_force_aut(S)
    t = G.closure_idx(S, [S.index(S.make(1, 0, 0)), S.index(S.make(0, 1, 0)), S.index(S.make(0, 0, 3))])
    ok, witness = O.characteristic_check(auts, t)
    assert not ok
    assert S.index(S.make(*witness["image"])) not in set(t.tolist())
    # the named map U is one such witness
    U = A.low_generators(p331)["U"]
    assert S.index(A.apply(U, S.make(0, 1, 0))) not in set(t.tolist())
