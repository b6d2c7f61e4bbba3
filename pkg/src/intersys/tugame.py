"""Coalitions, subset indexing and TU-games.

Players are numbered ``1..n``.  A coalition ``S`` is stored at the integer
index whose bit ``j - 1`` is set exactly when player ``j`` belongs to ``S``
(little-endian: player 1 is the lowest bit).  Enumerating indices
``0, 1, ..., 2**n - 1`` therefore lists coalitions in binary-counter order,
from the empty set to the grand coalition.  Every module that handles vectors
over ``2^N`` uses this layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import ShapeError


def subset_index(coalition: Iterable[int]) -> int:
    idx = 0
    for j in coalition:
        if j < 1:
            raise ValueError(f"players are numbered from 1, got {j}")
        idx |= 1 << (j - 1)
    return idx


def index_subset(idx: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(idx.bit_length()) if idx >> j & 1)


def subsets(n: int) -> list[frozenset[int]]:
    """All coalitions of ``{1..n}`` in index order."""
    return [index_subset(i) for i in range(1 << n)]


def popcounts(n: int) -> np.ndarray:
    """Coalition sizes ``|S|`` for every index ``0..2**n - 1``."""
    idx = np.arange(1 << n)
    sizes = np.zeros(1 << n, dtype=int)
    for j in range(n):
        sizes += (idx >> j) & 1
    return sizes


def subset_label(coalition: Iterable[int]) -> str:
    return "{" + ",".join(str(j) for j in sorted(coalition)) + "}"


def n_from_length(length: int) -> int:
    """Return ``n`` with ``2**n == length`` or raise :class:`ShapeError`."""
    if length < 1 or length & (length - 1):
        raise ShapeError(f"vector length must be a power of two, got {length}")
    return length.bit_length() - 1


@dataclass(frozen=True, eq=False)
class TUGame:
    """A transferable-utility game ``v: 2^N -> R``.

    ``values[i]`` is the worth of the coalition with index ``i``; ``v(empty)``
    is stored explicitly at ``values[0]``.  Integer and
    :class:`fractions.Fraction` values are kept as given so that exact
    arithmetic stays available.
    """

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.dtype.kind not in "biufO":
            raise TypeError(f"TU-game values must be real, got dtype {values.dtype}")
        if values.shape != (1 << self.n,):
            raise ShapeError(f"a game on {self.n} players needs {1 << self.n} values, got shape {values.shape}")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values) -> TUGame:
        values = np.asarray(values)
        return cls(n_from_length(len(values)), values)

    @classmethod
    def from_function(cls, n: int, f: Callable[[frozenset[int]], float]) -> TUGame:
        return cls(n, np.array([f(s) for s in subsets(n)]))

    @classmethod
    def from_mapping(cls, n: int, worth: Mapping[Iterable[int], float]) -> TUGame:
        """Build a game from ``{coalition: value}``; every coalition must be present."""
        values = [None] * (1 << n)
        for coalition, value in worth.items():
            values[subset_index(coalition)] = value
        missing = [subset_label(index_subset(i)) for i, x in enumerate(values) if x is None]
        if missing:
            raise ShapeError(f"game is undefined on coalitions {', '.join(missing)}")
        return cls(n, np.array(values))

    @classmethod
    def unanimity(cls, n: int, carrier: Iterable[int]) -> TUGame:
        """``u_T(S) = 1`` if ``T`` is contained in ``S``, else 0."""
        t = subset_index(carrier)
        return cls(n, np.array([1 if i & t == t else 0 for i in range(1 << n)]))

    @classmethod
    def additive(cls, weights) -> TUGame:
        weights = list(weights)
        return cls.from_function(len(weights), lambda s: sum(weights[j - 1] for j in s))

    def __call__(self, coalition: Iterable[int]):
        return self.values[subset_index(coalition)]

    def __eq__(self, other):
        if not isinstance(other, TUGame):
            return NotImplemented
        return self.n == other.n and bool(np.all(self.values == other.values))

    def __add__(self, other: TUGame) -> TUGame:
        return TUGame(self.n, self.values + other.values)

    def __mul__(self, scalar) -> TUGame:
        return TUGame(self.n, self.values * scalar)

    __rmul__ = __mul__

    def as_float(self) -> np.ndarray:
        return self.values.astype(float)
