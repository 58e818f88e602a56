import math

import pytest
from hypothesis import assume, given, strategies as st

from pgaut import modarith as M
from pgaut.errors import HypothesisFailure, ParameterError

primes = st.sampled_from([3, 5, 7, 11])


def test_vp_examples():
    assert M.vp(54, 3) == 3
    assert M.vp(7, 3) == 0
    assert M.vp(-45, 3) == 2
    with pytest.raises(ParameterError):
        M.vp(0, 3)


def test_pow_mod_examples():
    assert M.pow_mod(4, 3, 27) == 10
    assert M.pow_mod(5, 0, 27) == 1
    assert M.pow_mod(2, 5, 9) == 5


def test_unit_order_examples():
    assert M.unit_order(2, 27) == 18
    assert M.unit_order(1, 27) == 1
    assert M.unit_order(4, 27) == 9
    with pytest.raises(ParameterError):
        M.unit_order(3, 27)


@given(primes, st.integers(1, 4), st.integers(1, 500))
def test_unit_order_matches_iteration(p, n, u):
    m = p**n
    assume(math.gcd(u, m) == 1)
    k, x = 1, u % m
    while x != 1:
        x = x * u % m
        k += 1
    assert M.unit_order(u, m) == k


@pytest.mark.parametrize("args", [(1, 1, 1, 1, 3), (1, 1, 1, 0, 3), (2, 1, 2, 1, 3)])
def test_binomial_congruence_examples(args):
    assert M.check_lemma_uno(*args)


@given(st.integers(-20, 20), st.integers(1, 3), st.integers(1, 5), st.integers(0, 3), primes)
def test_binomial_congruence(ell, a, c, b, p):
    assume(ell != 0)
    assert M.check_lemma_uno(ell, a, c, b, p)


@pytest.mark.parametrize("args", [(3, 3, 3), (3, 1, 3), (9, 6, 3)])
def test_valuation_of_power_examples(args):
    assert M.check_lemma_cuno(*args)


@given(st.integers(-50, 50), st.integers(1, 3), st.integers(1, 200), primes)
def test_valuation_of_power(x, a, s, p):
    assume(x != 0 and x % p)
    assert M.check_lemma_cuno(x * p**a, s, p)


@pytest.mark.parametrize("args", [(4, 1, 2, 3), (1, 1, 1, 3), (10, 1, 3, 3)])
def test_geometric_sum_examples(args):
    assert M.check_lemma_sumalinda(*args)


def test_geometric_sum_premise_is_reported_separately():
    with pytest.raises(HypothesisFailure):
        M.check_lemma_sumalinda(2, 1, 2, 3)


@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**4), primes)
def test_geometric_sum(a, b, k, p):
    # z = 1 + p*k always satisfies the premise when b <= a + 1
    assume(b <= a + 1)
    assert M.check_lemma_sumalinda(1 + p * k, a, b, p)


def test_derive_de_examples():
    assert M.derive_de(3, 3) == (1, 2)
    assert M.derive_de(3, 4) == (1, 20)
    d, e = M.derive_de(5, 3)
    assert d == 1 and 6 * (1 + 5 * e) % 125 == 1


@given(primes, st.integers(2, 6))
def test_derive_de_invariants(p, n):
    d, e = M.derive_de(p, n)
    assert (1 + d * p) * (1 + e * p) % p**n == 1
    assert e % p and (e - d) % p


def test_appendix_constants_331():
    c = M.derive_appendix_constants(3, 3, 1)
    assert (c.g, c.h, c.t, c.ell, c.d, c.e) == (2, 41, 1, 14, 1, 2)
    assert (c.g0, c.h0, c.r, c.s) == (8, 17, 17, 17)
    assert all(c.checks.values())


@given(st.sampled_from([(3, 2, 1), (3, 3, 1), (3, 3, 2), (3, 4, 1), (3, 4, 2), (3, 4, 3), (5, 3, 1),
                        (5, 3, 2), (7, 3, 1), (3, 6, 2), (5, 4, 3)]))
def test_appendix_constants_congruences(pni):
    p, n, i = pni
    c = M.derive_appendix_constants(p, n, i)
    assert M.unit_order(c.g, p**n) == p ** (n - 1) * (p - 1)
    assert c.g * c.h % p**n == 1 and c.h % 2 == 1
    assert pow(c.g, p ** (i - 1) * (p - 1) * c.t, p**n) == (1 + p**i) % p**n
    assert (1 + c.d * p) * (1 + c.e * p) % p**n == 1


@pytest.mark.parametrize("bad", [(2, 3, 1), (9, 3, 1), (3, 1, 1), (3, 3, 0), (3, 3, 3)])
def test_invalid_params(bad):
    with pytest.raises(ParameterError):
        M.GroupParams.canonical(*bad)


def test_explicit_de_validation():
    M.GroupParams(3, 3, 1, 1, 2)
    with pytest.raises(ParameterError):
        M.GroupParams(3, 3, 1, 1, 1)
    with pytest.raises(ParameterError):
        M.GroupParams(3, 3, 1, 3, 2)


def test_regime(p331, p342, p332):
    assert p331.regime is M.Regime.LOW
    assert p342.regime is M.Regime.HIGH and not p342.top
    assert p332.top
    assert (p331.a_mod, p331.b_mod, p331.c_mod, p331.comm_step) == (3, 9, 9, 3)
    assert (p342.a_mod, p342.b_mod, p342.c_mod, p342.comm_step) == (9, 9, 27, 3)
