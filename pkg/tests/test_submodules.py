import itertools

import pytest
from hypothesis import given, settings, strategies as st

from virmod.core import MultiPoly
from virmod.core.rational import Q
from virmod.omega import DT_VARS, OmegaD, OmegaDT
from virmod.submodules import (CASES, PAIR_VARS, U_VARS, NotInFiltrationError, PairModule, from_u_basis,
                               quotient_phi, to_u_basis, wm_element, wm_member)


def pair_poly(terms):
    return MultiPoly(PAIR_VARS, terms)


def u_poly(terms):
    return MultiPoly(U_VARS, terms)


def test_to_u_basis_examples():
    assert to_u_basis(pair_poly({(0, 1, 0): 1})) == u_poly({(0, 1, 0): 1, (1, 0, 0): -1})
    assert to_u_basis(pair_poly({(1, 1, 0): 1})) == u_poly({(1, 1, 0): 1, (2, 0, 0): -1})
    assert to_u_basis(pair_poly({(0, 0, 3): 1})) == u_poly({(0, 0, 3): 1})


def test_wm_member_examples():
    assert wm_member(pair_poly({(1, 0, 1): 1}), 1)
    d2t = pair_poly({(0, 1, 1): 1})
    assert not wm_member(d2t, 0)
    assert wm_member(d2t, 1)
    assert not wm_member(pair_poly({(2, 0, 0): 1}), 1)


def test_quotient_examples():
    for m in range(3):
        x = wm_element(m, 2, 1)
        assert quotient_phi(x, m) == MultiPoly(DT_VARS, {(2, 1): 1})
        if m:
            assert not quotient_phi(wm_element(m - 1, 3, 2), m)
    with pytest.raises(NotInFiltrationError):
        quotient_phi(wm_element(2, 0, 0), 1)


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                       st.integers(-5, 5), max_size=5))
def test_u_basis_round_trip(terms):
    f = pair_poly(terms)
    assert from_u_basis(to_u_basis(f)) == f


def test_pair_needs_equal_lambda():
    with pytest.raises(ValueError):
        PairModule(OmegaDT.linear(2, 1, 1), OmegaD(3, 1))


@pytest.mark.parametrize("case", CASES)
@pytest.mark.parametrize("alpha,xi,eta,beta", [(1, 1, 0, 2), (Q(-2, 3), 3, Q(1, 2), Q(5, 4))])
def test_filtration_and_quotient(case, alpha, xi, eta, beta):
    lam = Q(7, 5)
    pair = PairModule(OmegaDT.linear(lam, alpha, xi, eta), OmegaD(lam, beta), case)
    for m in range(3):
        target = pair.target_module(m)
        for l, n, p in itertools.product(range(m + 1), range(3), range(3)):
            x = wm_element(l, n, p)
            for k in range(-3, 4):
                y = pair.act(k, x)
                assert wm_member(y, m)
                assert quotient_phi(y, m) == target.act(k, quotient_phi(x, m))


def test_filtration_is_proper():
    # D1**(m+1) escapes W_m even though d_k keeps W_m stable
    pair = PairModule(OmegaDT.linear(2, 1, 1), OmegaD(2, 3), "A")
    assert not wm_member(pair.act(1, wm_element(2, 0, 0)), 1)
