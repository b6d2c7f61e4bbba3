"""Decision states of ``n`` decision makers facing ``k`` alternatives each.

A state is a complex coefficient vector of length ``k**n``.  The outcome
``(j_1, ..., j_n)`` (maker ``i`` picks alternative ``j_i``) sits at index
``j_1 + j_2 k + ... + j_n k**(n-1)``, so maker 1 is the fastest-varying
digit.  For ``k = 2`` this is exactly the coalition indexing of
:mod:`intersys.tugame`: the outcome is identified with the set of makers that
choose ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError, ShapeError
from .linalg import pure_density
from .tugame import TUGame, subset_index

NORM_TOL = 1e-10


def _power_exponent(length: int, k: int) -> int:
    n, rest = 0, length
    while rest > 1 and rest % k == 0:
        rest //= k
        n += 1
    if rest != 1:
        raise ShapeError(f"coefficient vector of length {length} is not a power of k = {k}")
    return n


@dataclass(frozen=True, eq=False)
class DecisionState:
    """Coefficient vector of a (joint) decision state.

    Proper states have unit norm.  With ``valuation=True`` the vector is only
    required to be nonzero; this is how TU-games and other unnormalised
    valuations ``2^N -> C`` are carried.
    """

    n: int
    k: int
    coeffs: np.ndarray
    valuation: bool = False

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1).copy()
        if self.k < 2:
            raise ShapeError("decision makers need at least two alternatives")
        if c.size != self.k**self.n:
            raise ShapeError(f"expected {self.k}**{self.n} = {self.k**self.n} coefficients, got {c.size}")
        norm = np.linalg.norm(c)
        if norm == 0:
            raise PreconditionError("the zero vector is not a decision state")
        if not self.valuation and abs(norm - 1.0) > NORM_TOL:
            raise PreconditionError(f"decision state must have unit norm, got {norm:.12g}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_vector(cls, coeffs, k: int = 2, *, normalize: bool = False, valuation: bool = False) -> DecisionState:
        c = np.asarray(coeffs, dtype=complex).reshape(-1)
        if normalize:
            norm = np.linalg.norm(c)
            if norm == 0:
                raise PreconditionError("cannot normalise the zero vector")
            c = c / norm
        return cls(_power_exponent(c.size, k), k, c, valuation)

    @classmethod
    def basis(cls, outcome: Sequence[int], k: int = 2) -> DecisionState:
        """Basis state ``|j_1 ... j_n>``."""
        c = np.zeros(k ** len(outcome), dtype=complex)
        c[outcome_index(outcome, k)] = 1
        return cls(len(outcome), k, c)

    @classmethod
    def coalition(cls, n: int, members: Iterable[int]) -> DecisionState:
        """Basis state ``|K>`` for the coalition ``K`` of makers choosing 1."""
        c = np.zeros(1 << n, dtype=complex)
        c[subset_index(members)] = 1
        return cls(n, 2, c)

    @classmethod
    def from_game(cls, v: TUGame) -> DecisionState:
        """The valuation ``sum_S v(S)|S>`` of a (nonzero) TU-game."""
        return cls(v.n, 2, v.as_float(), valuation=True)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __getitem__(self, outcome) -> complex:
        if isinstance(outcome, (int, np.integer)):
            return complex(self.coeffs[outcome])
        if self.k == 2 and isinstance(outcome, (set, frozenset)):
            return complex(self.coeffs[subset_index(outcome)])
        return complex(self.coeffs[outcome_index(outcome, self.k)])

    def __eq__(self, other):
        if not isinstance(other, DecisionState):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and bool(np.all(self.coeffs == other.coeffs))

    def allclose(self, other: DecisionState, atol: float = 1e-10) -> bool:
        return (self.n, self.k) == (other.n, other.k) and np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol)

    def __matmul__(self, other: DecisionState) -> DecisionState:
        return tensor(self, other)


def outcome_index(outcome: Sequence[int], k: int = 2) -> int:
    idx = 0
    for i, j in enumerate(outcome):
        if not 0 <= j < k:
            raise ValueError(f"alternative {j} out of range for k = {k}")
        idx += j * k**i
    return idx


def index_outcome(idx: int, n: int, k: int = 2) -> tuple[int, ...]:
    return tuple(idx // k**i % k for i in range(n))


def qubit(delta0: complex, delta1: complex, normalize: bool = False) -> DecisionState:
    """Single binary decision state ``delta0|0> + delta1|1>``."""
    return DecisionState.from_vector([delta0, delta1], normalize=normalize)


def qubit_from_tendencies(d: Sequence[float]) -> DecisionState:
    """Pack real switching tendencies ``(d00, d10, d01, d11)`` as ``(d00 + i d10, d01 + i d11)``."""
    d00, d10, d01, d11 = (float(x) for x in d)
    return qubit(complex(d00, d10), complex(d01, d11))


def multichoice_state(n: int, k: int, coeffs) -> DecisionState:
    return DecisionState(n, k, coeffs)


def tensor(a: DecisionState, b: DecisionState) -> DecisionState:
    """Tensor product: ``a``'s makers come first, ``(a x b)_{kl} = a_k b_l``."""
    if a.k != b.k:
        raise ShapeError(f"cannot combine k = {a.k} with k = {b.k}")
    # ``a`` owns the fast-varying digits, hence kron(b, a).
    return DecisionState(a.n + b.n, a.k, np.kron(b.coeffs, a.coeffs), a.valuation or b.valuation)


def tensor_all(states: Iterable[DecisionState]) -> DecisionState:
    return reduce(tensor, states)


def outcome_probabilities(state: DecisionState) -> np.ndarray:
    """``p_k = |alpha_k|^2 / ||alpha||^2`` for every outcome index."""
    w = np.abs(state.coeffs) ** 2
    return w / w.sum()


def density(state: DecisionState) -> np.ndarray:
    """Pure density ``delta delta*`` of a proper decision state."""
    if state.valuation:
        raise PreconditionError("density is defined for proper (unit norm) states only")
    return pure_density(state.coeffs)


def coefficient_matrix(state: DecisionState, m: int) -> np.ndarray:
    """``k**m x k**(n-m)`` matrix ``C[kk, ll]`` of coefficients, first ``m`` makers as rows."""
    if not 0 < m < state.n:
        raise ValueError(f"split position must satisfy 0 < m < n = {state.n}, got {m}")
    k = state.k
    return state.coeffs.reshape(k ** (state.n - m), k**m).T


def is_reducible(
    state: DecisionState, m: int, tol: float = 1e-8
) -> tuple[bool, tuple[DecisionState, DecisionState] | None]:
    """Test whether ``state = a x b`` with ``a`` on the first ``m`` makers.

    The coefficient matrix has rank one exactly when the state factorises.  The
    second singular value is compared with ``tol`` times the largest one.
    When reducible, the factors are returned as proper states (up to a global
    phase shared between them); otherwise the second element is ``None``.
    """
    u, s, vh = np.linalg.svd(coefficient_matrix(state, m))
    if s.size > 1 and s[1] > tol * s[0]:
        return False, None
    a, b = u[:, 0], vh[0]
    lead = a[np.argmax(np.abs(a))]
    phase = np.conj(lead) / abs(lead)
    a, b = a * phase, b / phase
    k = state.k
    return True, (DecisionState(m, k, a), DecisionState(state.n - m, k, b))


def is_entangled(state: DecisionState, tol: float = 1e-8) -> bool:
    """True when no prefix split ``0 < m < n`` factorises the state."""
    return not any(is_reducible(state, m, tol)[0] for m in range(1, state.n))


def fuzzy_state(w: Sequence[float]) -> DecisionState:
    """Product state realising independent participation probabilities ``w_j``.

    Maker ``j`` is in ``sqrt(1 - w_j)|0> + sqrt(w_j)|1>``, so coalition ``S``
    forms with probability ``prod_{s in S} w_s * prod_{t not in S} (1 - w_t)``.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ShapeError("participation levels must be a nonempty vector")
    if np.any((w < 0) | (w > 1)):
        raise PreconditionError("participation levels must lie in [0, 1]")
    return tensor_all(qubit(np.sqrt(1 - x), np.sqrt(x)) for x in w)
