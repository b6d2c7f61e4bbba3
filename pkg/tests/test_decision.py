import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intersys.decision import (
    DecisionState,
    coefficient_matrix,
    density,
    fuzzy_state,
    index_outcome,
    is_entangled,
    is_reducible,
    multichoice_state,
    outcome_index,
    outcome_probabilities,
    qubit,
    qubit_from_tendencies,
    tensor,
    tensor_all,
)
from intersys.errors import PreconditionError, ShapeError
from intersys.tugame import TUGame

from oracles import aubin_probability


def random_state(rng, n, k=2):
    c = rng.normal(size=k**n) + 1j * rng.normal(size=k**n)
    return DecisionState(n, k, c / np.linalg.norm(c))


def test_construction_checks():
    with pytest.raises(PreconditionError):
        DecisionState(1, 2, [1, 1])
    with pytest.raises(PreconditionError):
        DecisionState(1, 2, [0, 0], valuation=True)
    with pytest.raises(ShapeError):
        DecisionState(2, 2, [1, 0, 0])
    with pytest.raises(ShapeError):
        DecisionState.from_vector([1, 0, 0], k=2)
    s = DecisionState.from_vector([3, 4], normalize=True)
    assert s.norm == pytest.approx(1) and s[1] == pytest.approx(0.8)


def test_indexing_conventions():
    assert outcome_index((1, 0, 2), 3) == 1 + 0 + 2 * 9
    assert index_outcome(19, 3, 3) == (1, 0, 2)
    s = DecisionState.coalition(3, [1, 3])
    assert s[{1, 3}] == 1 and s[(1, 0, 1)] == 1 and s[5] == 1
    assert DecisionState.basis((0, 1)) == DecisionState.coalition(2, [2])


def test_tensor_layout():
    a = qubit(0.6, 0.8)
    b = qubit(1, 0)
    ab = tensor(a, b)
    # maker 1 (from a) is the low digit
    assert np.allclose(ab.coeffs, [0.6, 0.8, 0, 0])
    assert (a @ b) == ab
    assert tensor_all([a, b, b]).n == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_tensor_norm_multiplicative(n1, n2, seed):
    rng = np.random.default_rng(seed)
    a = DecisionState.from_vector(rng.normal(size=2**n1) + 1j * rng.normal(size=2**n1), valuation=True)
    b = DecisionState.from_vector(rng.normal(size=2**n2), valuation=True)
    assert tensor(a, b).norm ** 2 == pytest.approx(a.norm**2 * b.norm**2, rel=1e-12)


def test_reducible_recovers_factors_up_to_phase():
    rng = np.random.default_rng(20)
    for n1, n2 in [(1, 1), (1, 2), (2, 2), (3, 1)]:
        a, b = random_state(rng, n1), random_state(rng, n2)
        ok, factors = is_reducible(a @ b, n1)
        assert ok
        fa, fb = factors
        assert (fa @ fb).allclose(a @ b, atol=1e-10)
        # each factor equals the original up to a unit phase
        for got, want in ((fa, a), (fb, b)):
            overlap = np.vdot(want.coeffs, got.coeffs)
            assert abs(overlap) == pytest.approx(1, abs=1e-10)
            assert np.allclose(got.coeffs, overlap * want.coeffs, atol=1e-8)


def test_bell_state_irreducible():
    bell = DecisionState(2, 2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    ok, factors = is_reducible(bell, 1)
    assert not ok and factors is None
    assert is_entangled(bell)
    assert not is_entangled(qubit(1, 0) @ qubit(0, 1))


def test_coefficient_matrix_rows_are_first_makers():
    s = DecisionState(2, 2, [0.5, 0.5, 0.5, 0.5])
    c = coefficient_matrix(s, 1)
    assert c.shape == (2, 2)
    s = DecisionState.basis((1, 0, 0))
    assert coefficient_matrix(s, 1)[1, 0] == 1
    with pytest.raises(ValueError):
        coefficient_matrix(s, 3)


def test_multichoice_and_probabilities():
    c = np.ones(9) / 3
    s = multichoice_state(2, 3, c)
    assert np.allclose(outcome_probabilities(s), 1 / 9)
    assert is_reducible(s, 1)[0]


def test_density_and_valuation():
    s = qubit(1, 1j, normalize=True)
    p = density(s)
    assert np.allclose(p, [[0.5, -0.5j], [0.5j, 0.5]])
    g = DecisionState.from_game(TUGame.from_values([0, 1, 0, 2]))
    assert g.valuation
    with pytest.raises(PreconditionError):
        density(g)


def test_qubit_from_tendencies():
    s = qubit_from_tendencies([0.5, 0.5, 0.5, 0.5])
    assert np.allclose(s.coeffs, [0.5 + 0.5j, 0.5 + 0.5j])


def test_fuzzy_state_matches_product_formula():
    rng = np.random.default_rng(21)
    for n in range(1, 11):
        w = rng.uniform(size=n)
        p = outcome_probabilities(fuzzy_state(w))
        want = [aubin_probability(w, s) for s in range(1 << n)]
        assert np.max(np.abs(p - want)) <= 1e-12
    with pytest.raises(PreconditionError):
        fuzzy_state([1.2])
