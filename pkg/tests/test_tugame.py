from fractions import Fraction

import numpy as np
import pytest

from intersys.errors import ShapeError
from intersys.tugame import (
    TUGame,
    index_subset,
    n_from_length,
    popcounts,
    subset_index,
    subset_label,
    subsets,
)


def test_index_roundtrip():
    for i in range(64):
        assert subset_index(index_subset(i)) == i
    assert subset_index([1, 3]) == 5
    assert index_subset(6) == {2, 3}
    with pytest.raises(ValueError):
        subset_index([0])


def test_subsets_order_and_sizes():
    assert subsets(2) == [frozenset(), {1}, {2}, {1, 2}]
    assert list(popcounts(3)) == [0, 1, 1, 2, 1, 2, 2, 3]
    assert subset_label([2, 1]) == "{1,2}"


def test_n_from_length():
    assert n_from_length(1) == 0 and n_from_length(16) == 4
    for bad in (0, 3, 12):
        with pytest.raises(ShapeError):
            n_from_length(bad)


def test_constructors_agree():
    by_values = TUGame.from_values([0, 1, 0, 2])
    by_map = TUGame.from_mapping(2, {(): 0, (1,): 1, (2,): 0, (1, 2): 2})
    by_fn = TUGame.from_function(2, lambda s: {0: 0, 1: 1 if 1 in s else 0, 2: 2}[len(s)])
    assert by_values == by_map == by_fn
    assert by_values((1, 2)) == 2


def test_from_mapping_requires_all_coalitions():
    with pytest.raises(ShapeError, match=r"\{1,2\}"):
        TUGame.from_mapping(2, {(): 0, (1,): 1, (2,): 0})


def test_unanimity_and_additive():
    u = TUGame.unanimity(3, [1, 3])
    assert [u(s) for s in subsets(3)] == [0, 0, 0, 0, 0, 1, 0, 1]
    a = TUGame.additive([1, 2, 4])
    assert list(a.values) == list(range(8))


def test_arithmetic_and_exact_values():
    v = TUGame.from_values([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)])
    w = 3 * v + v
    assert w.values[1] == Fraction(4, 3)
    assert v.values.dtype == object


def test_rejects_bad_values():
    with pytest.raises(ShapeError):
        TUGame(2, np.zeros(3))
    with pytest.raises(TypeError):
        TUGame(1, np.array([0, 1j]))
    v = TUGame.from_values([0, 1])
    with pytest.raises(ValueError):
        v.values[0] = 5
