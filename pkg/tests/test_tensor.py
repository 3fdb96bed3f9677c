import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from virmod.core import SingularMatrixError
from virmod.core.rational import Q
from virmod.enveloping import Induced, ShiftModule, Verma
from virmod.omega import OmegaD, OmegaDT
from virmod.relations import bracket_defect
from virmod.suites import random_element
from virmod.tensor import (MixedExponentError, TensorElement, TensorMonomial, TensorSpec, compare_monomials,
                           component, degree, extract_components, extraction_layout, move, omega_op, reconstruct)

LAM, MU, ALPHA, XI, ETA, BETA = Q(2), Q(3), Q(1), Q(3, 2), Q(-1), Q(2)
DT = OmegaDT.linear(LAM, ALPHA, XI, ETA)
DD = OmegaD(MU, BETA)
SPEC = TensorSpec([DT], [DD], Verma(Q(1, 2), Q(1, 3)))
PLAIN = TensorSpec([DT], [DD], None)


def el(spec, r, p, v=None, c=1):
    return spec.element(r, p, v, c)


def test_act_k0_on_vacuum():
    assert PLAIN.act(0, PLAIN.vacuum()) == el(PLAIN, (1, 0), (0,)) + el(PLAIN, (0, 1), (0,))


def test_ordering_examples():
    a = TensorMonomial((1,), (0,), None)
    b = TensorMonomial((0,), (5,), None)
    assert compare_monomials(a, b, 1) == 1
    assert compare_monomials(a, a, 1) == 0
    assert compare_monomials(TensorMonomial((0,), (1,), None), TensorMonomial((0,), (0,), None), 1) == 1


def test_degree_examples():
    assert degree(SPEC.vacuum(), 1) == (0, 0, 0)
    assert degree(el(SPEC, (1, 0), (0,)) + el(SPEC, (0, 0), (1,)), 1) == (1, 0, 0)
    assert degree(el(SPEC, (2, 1), (3,)), 1) == (2, 3, 1)


def test_vacuum_components():
    comps = {(c.slot, c.power): c.element for c in extract_components(SPEC.vacuum(), SPEC)}
    assert comps[("dt", 0), 2] == SPEC.vacuum() * (-ALPHA * XI)
    assert comps[("d", 0), 1] == SPEC.vacuum() * (-BETA)


def test_extraction_rejects_equal_bases():
    spec = TensorSpec([DT], [OmegaD(LAM, BETA)], None)
    with pytest.raises(SingularMatrixError):
        extract_components(spec.vacuum(), spec)


@pytest.mark.parametrize("spec", [SPEC, PLAIN, TensorSpec([DT, OmegaDT.linear(-1, 2, 1, 3)], [DD], None),
                                  TensorSpec([], [DD, OmegaD(-2, 5)], Induced(Q(1), ShiftModule(1, 2)))])
def test_reconstruction_beyond_window(spec):
    rng = random.Random(7)
    for _ in range(5):
        f = random_element(spec, rng, 2, 1)
        comps = extract_components(f, spec)
        start = spec.local_bound(f) + 1 + sum(extraction_layout(f, spec)[1])
        for k in range(start, start + 5):
            assert reconstruct(comps, k) == spec.act(k, f)


# moves ---------------------------------------------------------------------------


def F_closed(p):
    """F(t**p) for h = XI t + ETA, as {t-exponent: coeff}."""
    out = {p: XI}
    if p:
        out[p - 1] = Q(-p)
    return out


def test_raise_moves():
    f = el(SPEC, (0, 0), (1,))
    assert move(f, "raise_dt", 0, SPEC) == el(SPEC, (1, 0), (1,))
    assert move(f, "raise_d", 0, SPEC) == el(SPEC, (0, 1), (1,))


@pytest.mark.parametrize("r,p,rd", [(0, 0, 0), (0, 2, 1), (1, 1, 0), (2, 3, 2)])
def test_alpha_f_move(r, p, rd):
    f = el(SPEC, (r, rd), (p,))
    expected = TensorElement()
    for e, c in F_closed(p).items():
        expected.add_term(SPEC.monomial((0, rd), (e,)), ALPHA * c)
    assert move(f, "alpha_f", 0, SPEC) == expected


@pytest.mark.parametrize("r,p", [(0, 0), (0, 2), (1, 1), (2, 2)])
def test_g_move(r, p):
    f = el(SPEC, (r, 1), (p,))
    h_alpha = XI * ALPHA + ETA
    expected = TensorElement()
    expected.add_term(SPEC.monomial((0, 1), (p,)), h_alpha)
    for e, c in F_closed(p).items():
        expected.add_term(SPEC.monomial((0, 1), (e + 1,)), c)
        if r:
            expected.add_term(SPEC.monomial((1, 1), (e,)), r * ALPHA * c)
    assert move(f, "g", 0, SPEC) == expected


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_beta_move(r):
    f = el(SPEC, (1, r), (2,))
    assert move(f, "beta", 0, SPEC) == el(SPEC, (1, 0), (2,), c=BETA)


def test_move_rejects_mixed_exponents():
    f = el(SPEC, (0, 1), (0,)) + el(SPEC, (0, 2), (0,))
    with pytest.raises(MixedExponentError):
        move(f, "beta", 0, SPEC)


@pytest.mark.parametrize("r", range(5))
def test_beta_binomial_sign(r):
    """Coefficient of k**l mu**k in d_k(D**r) is (-1)**l (C(r,l) + C(r,l-1) beta) D**(r-l+1)."""
    spec = TensorSpec([], [DD], None)
    f = spec.element((r,), ())
    got = {c.power: c.element for c in extract_components(f, spec)}
    for l in range(r + 2):
        coeff = (-1) ** l * (comb(r, l) + (comb(r, l - 1) if l else 0) * BETA)
        expected = spec.element((r - l + 1,), (), coeff=coeff) if coeff else TensorElement()
        assert got.get(l, TensorElement()) == expected


# omega operator -------------------------------------------------------------------


def test_omega_s0_is_single_product():
    f = el(SPEC, (1, 0), (1,))
    assert omega_op(0, 3, -1, f, SPEC) == SPEC.act(4, SPEC.act(-1, f))


@pytest.mark.parametrize("fac", [DT, DD, OmegaDT(Q(-1, 2), 3, [1, 2, 5])])
@pytest.mark.parametrize("s,l", [(5, 7), (5, 8), (6, 7), (6, 8)])
def test_omega_vanishes_on_single_factor_vacuum(fac, s, l):
    spec = TensorSpec([fac], [], None) if isinstance(fac, OmegaDT) else TensorSpec([], [fac], None)
    assert not omega_op(s, l, -(s + 2), spec.vacuum(), spec)


@pytest.mark.parametrize("l", [8, 9])
def test_omega_nonzero_with_highest_weight_factor(l):
    assert omega_op(5, l, -7, SPEC.vacuum(), SPEC)


def test_omega_cross_terms_on_two_factor_vacuum():
    # with two factors the mixed terms carry (mu/lam)**i and do not cancel
    assert omega_op(5, 8, -7, PLAIN.vacuum(), PLAIN)


# bracket on random elements -------------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-3, 3), st.integers(-3, 3))
def test_tensor_bracket_random(seed, i, j):
    f = random_element(SPEC, random.Random(seed), 3, 2)
    assert not bracket_defect(SPEC.act, SPEC.act_central, f, i, j)
