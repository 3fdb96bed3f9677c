import pytest
from hypothesis import given, settings, strategies as st

from virmod.core.rational import Q
from virmod.enveloping import (BracketViolation, Induced, PBWMonomial, PBWVector, ShiftModule, TableModule, Verma,
                               check_conditions_ab, local_bound, partitions, straighten_apply, verma_basis)
from virmod.relations import bracket_defect, first_bracket_failure

THETA, H = Q(1, 2), Q(1, 3)
V = Verma(THETA, H)


def word(*parts, tail=None):
    return PBWVector({PBWMonomial(tuple(sorted(parts)), tail): 1})


def test_straighten_examples():
    hw = V.vacuum()
    assert straighten_apply(1, word(1), V) == hw * (-2 * H)
    assert straighten_apply(2, word(2), V) == hw * (-4 * H + THETA / 2)
    assert straighten_apply(-3, hw, V) == word(3)


def test_straighten_normal_orders():
    # words read d_{-1}^a d_{-2}^b ... v; d_{-2} d_{-1} v = d_{-1} d_{-2} v + d_{-3} v
    assert straighten_apply(-1, word(2), V) == word(1, 2)
    assert straighten_apply(-2, word(1), V) == word(1, 2) + word(3)


def test_verma_basis_counts():
    assert verma_basis(0) == [PBWMonomial((), None)]
    assert set(verma_basis(2)) == {PBWMonomial((1, 1), None), PBWMonomial((2,), None)}
    assert len(verma_basis(4)) == 5
    assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_local_bound_examples():
    assert local_bound(V.vacuum(), V) == 0
    assert local_bound(word(2, 1), V) == 3
    induced = Induced(Q(0), ShiftModule(2))
    assert local_bound(word(tail=0), induced) == 2


def test_conditions_one_dimensional():
    N = TableModule(0, 1, {0: {0: {0: 3}}})
    report = check_conditions_ab(Induced(Q(1), N), 1)
    assert report.ok


def test_conditions_shift():
    assert check_conditions_ab(Induced(Q(1), ShiftModule(1, 2)), 6).ok
    assert check_conditions_ab(Induced(Q(1), ShiftModule(2, -1)), 6).ok


def test_conditions_zero_action_gives_kernel():
    N = TableModule(0, 2, {})
    report = check_conditions_ab(Induced(Q(1), N), 2)
    assert not report.ok
    assert report.kernel_witness


def test_table_module_bracket_violation():
    # [d_0, d_1] = d_1 fails when d_0 = 0 and d_1 != 0
    N = TableModule(1, 2, {1: {0: {1: 1}}})
    with pytest.raises(BracketViolation):
        check_conditions_ab(Induced(Q(1), N), 2)


def test_shift_module_needs_small_k():
    with pytest.raises(ValueError):
        ShiftModule(3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_verma_bracket(level, i, j):
    for mono in V.basis(level):
        x = PBWVector({mono: 1})
        assert not bracket_defect(V.act, V.act_central, x, i, j)


@pytest.mark.parametrize("k", [1, 2])
def test_induced_bracket(k):
    spec = Induced(Q(-2, 5), ShiftModule(k, Q(1, 3)))
    vectors = [PBWVector({m: 1}) for L in range(3) for m in spec.basis(L, n_tails=3)]
    assert first_bracket_failure(spec.act, spec.act_central, vectors, range(-3, 4)) is None


def test_positive_generators_kill_highest_weight():
    for i in range(1, 6):
        assert not V.act(i, V.vacuum())
    assert V.act(0, V.vacuum()) == V.vacuum() * H
