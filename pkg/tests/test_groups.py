import numpy as np
import pytest
from hypothesis import given, strategies as st

from pgaut import groups as G
from pgaut import oracle as O
from pgaut.errors import ParameterError, ResourceGuardError
from pgaut.groups import SElement, UElement
from pgaut.modarith import GroupParams

GRID = [(3, 2, 1), (3, 3, 1), (3, 3, 2), (3, 4, 1), (3, 4, 2), (3, 4, 3), (5, 3, 1), (5, 3, 2)]


def test_s_multiplication_examples(p331):
    assert G.s_mul(SElement(0, 1, 0), SElement(1, 0, 0), p331) == SElement(1, 1, 6)
    assert G.s_mul(SElement(0, 0, 1), SElement(0, 1, 0), p331) == SElement(0, 4, 1)
    assert G.s_mul(SElement(0, 0, 0), SElement(2, 5, 7), p331) == SElement(2, 5, 7)
    with pytest.raises(ParameterError):
        G.s_mul(SElement(3, 0, 0), SElement(0, 0, 0), p331)


def test_s_derived_ops(p331):
    S = G.s_group(p331)
    a, b, c = S.gens()
    assert G.s_comm(a, b, p331) == SElement(0, 0, 3)
    assert G.s_inv(S.identity(), p331) == S.identity()
    assert G.s_pow(SElement(0, 1, 1), 27, p331) == S.identity()
    assert G.s_order(c, p331) == 9
    assert G.s_order(S.identity(), p331) == 1
    ab = S.mul(a, b)
    assert G.s_order(ab, p331) == len(G.cyclic_subgroup(S, ab)) == int(S.orders_idx()[S.index(ab)])


@pytest.mark.parametrize("pni", GRID)
def test_orders(pni):
    P = GroupParams.canonical(*pni)
    for which, grp in (("S", G.s_group(P)), ("T", G.t_group(P)), ("U", G.u_group(P))):
        assert grp.order == len(set(grp.elements())) == G.group_order(P, which)


def test_order_examples(p331, p342, p332):
    assert G.group_order(p331, "S") == 243
    assert G.group_order(p342, "S") == 2187
    assert G.group_order(p332, "S") == 81
    assert G.group_order(p332, "T") == 27


@pytest.mark.parametrize("pni", GRID)
def test_defining_relations_hold(pni):
    P = GroupParams.canonical(*pni)
    for grp in (G.s_group(P), G.t_group(P), G.u_group(P), G.heis_group(P)):
        for rel in grp.relations():
            assert G.relation_holds(grp, rel, grp.gens()), (grp, rel.label)


@pytest.mark.parametrize("pni", [(3, 3, 1), (3, 4, 2), (3, 3, 2)])
def test_index_and_scalar_arithmetic_agree(pni):
    P = GroupParams.canonical(*pni)
    S = G.s_group(P)
    rng = np.random.default_rng(7)
    x, y = rng.integers(0, S.order, 500), rng.integers(0, S.order, 500)
    got = S.mul_idx(x, y)
    want = [S.index(S.mul(S.element(int(u)), S.element(int(v)))) for u, v in zip(x, y)]
    assert got.tolist() == want
    inv = S.inv_idx(x)
    assert (S.mul_idx(x, inv) == 0).all()


elements_331 = st.tuples(st.integers(0, 2), st.integers(0, 8), st.integers(0, 8))


@given(elements_331, elements_331, elements_331)
def test_associativity_property(x, y, z):
    S = G.s_group(GroupParams.canonical(3, 3, 1))
    x, y, z = S.make(*x), S.make(*y), S.make(*z)
    assert S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z))


@given(elements_331, st.integers(-40, 40), st.integers(-40, 40))
def test_power_laws(x, j, k):
    S = G.s_group(GroupParams.canonical(3, 3, 1))
    x = S.make(*x)
    assert S.mul(S.pow(x, j), S.pow(x, k)) == S.pow(x, j + k)
    assert S.mul(x, S.inv(x)) == S.identity()


def test_u_order_examples(p331):
    assert G.u_order(UElement(1, 1), p331) == 27
    assert G.u_order(UElement(0, 0), p331) == 1
    U = G.u_group(p331)
    assert G.u_order(UElement(3, 1), p331) == U.element_order(UElement(3, 1)) == 9


def test_u_normal_cyclic_examples(p331):
    assert G.u_normal_cyclic(UElement(1, 3), p331)
    assert not G.u_normal_cyclic(UElement(1, 1), p331)
    assert G.u_normal_cyclic(UElement(1, 0), p331)


def test_inner_y_on_x(p331):
    U = G.u_group(p331)
    x, y = U.gens()
    assert U.conj(y, x) == U.make(1 + 3, 0)


def test_closure_examples(p331):
    S = G.s_group(p331)
    assert G.subgroup_closure(S, [S.identity()]) == [S.identity()]
    assert len(G.subgroup_closure(S, S.gens())) == 243
    # a has order 3 here, so a^3 is trivial and the subgroup is <b^3> x <c^3>
    gens = [S.make(3, 0, 0), S.make(0, 3, 0), S.make(0, 0, 3)]
    sub = G.closure_idx(S, [S.index(g) for g in gens])
    assert sub.size == 9
    assert np.array_equal(sub, O.brute_force_derived(S))
    with pytest.raises(ResourceGuardError):
        G.closure_idx(S, S.gen_indices(), cap=10)


def test_centers(p331, p342):
    S = G.s_group(p342)
    z = G.center(S)
    assert len(z) == 9 and set(z) == set(G.cyclic_subgroup(S, S.make(0, 0, 3)))
    S = G.s_group(p331)
    z = G.center(S)
    assert set(z) == set(G.subgroup_closure(S, [S.make(0, 0, 3), S.make(0, 3, 0)]))


@pytest.mark.parametrize("pni,rank", [((3, 3, 1), 3), ((3, 4, 2), 3), ((3, 2, 1), 2), ((5, 3, 1), 3)])
def test_frattini_rank(pni, rank):
    P = GroupParams.canonical(*pni)
    assert G.frattini_rank(G.s_group(P), P.p) == rank
    assert G.frattini_rank(G.u_group(P), P.p) == 2


def test_heisenberg_map_is_isomorphism(p342):
    T, H = G.t_group(p342), G.heis_group(p342)
    img = [G.t_to_heisenberg(t, p342) for t in T.elements()]
    assert len(set(img)) == H.order == T.order
    for x in T.elements()[::7]:
        for y in T.elements()[::11]:
            assert G.t_to_heisenberg(T.mul(x, y), p342) == H.mul(G.t_to_heisenberg(x, p342),
                                                                 G.t_to_heisenberg(y, p342))


def test_heisenberg_matrix_product():
    H = G.HeisGroup(9, 3)
    x, y = H.make(1, 2, 0), H.make(2, 1, 1)
    prod = np.array(H.matrix(x)) @ np.array(H.matrix(y))
    z = H.matrix(H.mul(x, y))
    assert (prod[0, 1] - z[0][1]) % 3 == 0 and (prod[1, 2] - z[1][2]) % 9 == 0 and (prod[0, 2] - z[0][2]) % 3 == 0


def test_t_embedding_round_trip(p331):
    T = G.t_group(p331)
    for t in T.elements():
        assert G.t_from_s(G.t_embed(t, p331), p331) == t
    with pytest.raises(ParameterError):
        G.t_from_s(SElement(0, 0, 1), p331)


def test_trivial_and_abelian_groups():
    triv = G.AbelianGroup(())
    assert triv.order == 1 and triv.elements() == [triv.identity()]
    Z = G.AbelianGroup((3, 9))
    assert G.center_idx(Z).size == 27
    assert O.brute_force_center(Z).size == 27
