"""Interaction systems: real interaction matrices and their hermitian representation.

A state of an interaction system on a finite agent set ``X`` is a real matrix
``A`` of pairwise interaction coefficients.  Splitting ``A`` into symmetric and
skew parts ``A = A+ + A-`` and packing them as ``A^ = A+ + i A-`` gives a
self-adjoint matrix, so every state has a real spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NotSelfAdjointError, PreconditionError, ShapeError
from .linalg import DEFAULT_TOL, as_square, eigh, self_adjoint_violation
from .tugame import TUGame, subset_index, subset_label, subsets


def as_real_square(a, name: str = "A") -> np.ndarray:
    m = as_square(a, name)
    if np.iscomplexobj(m):
        if np.any(m.imag != 0):
            raise ShapeError(f"{name} must be real")
        m = m.real
    return m.astype(float)


def symmetry_split(a) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A+, A-)`` with ``A+ = (A + A^T)/2`` and ``A- = (A - A^T)/2``."""
    a = as_real_square(a)
    return (a + a.T) / 2, (a - a.T) / 2


def hermitian_repr(a) -> np.ndarray:
    """``A^ = A+ + i A-``: a real-linear isometry onto the self-adjoint matrices."""
    sym, skew = symmetry_split(a)
    return sym + 1j * skew


def from_hermitian(h, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of :func:`hermitian_repr`: ``A = Re(H) + Im(H)``."""
    h = as_square(h, "H")
    violation = self_adjoint_violation(h)
    if violation > tol:
        raise NotSelfAdjointError(violation, tol)
    h = (h + np.conj(h).T) / 2
    return np.real(h) + np.imag(h)


def pauli_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The real 2x2 basis ``(I, pi1, pi2, pi3)`` of binary interaction.

    ``I, pi1, pi2`` span the symmetric matrices and ``pi3`` the skew ones.  The
    hermitian representations of ``pi1, pi2`` and ``pi3`` (the latter being
    ``i * pi3``) are the Pauli spin matrices.
    """
    eye = np.eye(2)
    pi1 = np.array([[1.0, 0.0], [0.0, -1.0]])
    pi2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    pi3 = np.array([[0.0, -1.0], [1.0, 0.0]])
    return eye, pi1, pi2, pi3


def pauli_coefficients(a) -> np.ndarray:
    """Coefficients ``c`` with ``A = c0 I + c1 pi1 + c2 pi2 + c3 pi3``."""
    a = as_real_square(a)
    if a.shape != (2, 2):
        raise ShapeError("Pauli expansion is defined for 2x2 matrices")
    (p, q), (r, s) = a
    return np.array([(p + s) / 2, (p - s) / 2, (q + r) / 2, (r - q) / 2])


@dataclass(frozen=True, eq=False)
class InteractionState:
    """A state of an interaction system: agent labels plus the real matrix ``A``.

    The symmetric part, skew part and hermitian representation are computed on
    first access and cached.
    """

    A: np.ndarray
    agents: tuple[str, ...] = field(default=())

    def __post_init__(self):
        a = as_real_square(self.A).copy()
        a.setflags(write=False)
        object.__setattr__(self, "A", a)
        agents = tuple(str(x) for x in self.agents) or tuple(str(i + 1) for i in range(a.shape[0]))
        if len(agents) != a.shape[0]:
            raise ShapeError(f"{len(agents)} agent labels for a {a.shape[0]}x{a.shape[0]} matrix")
        if len(set(agents)) != len(agents):
            raise ValueError("agent labels must be distinct")
        object.__setattr__(self, "agents", agents)

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def index(self, agent: str) -> int:
        return self.agents.index(str(agent))

    @cached_property
    def symmetric(self) -> np.ndarray:
        return symmetry_split(self.A)[0]

    @cached_property
    def skew(self) -> np.ndarray:
        return symmetry_split(self.A)[1]

    @cached_property
    def hermitian(self) -> np.ndarray:
        return self.symmetric + 1j * self.skew

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.A))

    @classmethod
    def from_hermitian(cls, h, agents: Sequence[str] = (), tol: float = DEFAULT_TOL) -> InteractionState:
        return cls(from_hermitian(h, tol), tuple(agents))


def state_eigenvalues(s: InteractionState) -> np.ndarray:
    """Eigenvalues of the state, i.e. of its hermitian representation (descending)."""
    return eigh(s.hermitian).eigenvalues


def _coalition_agents(n: int) -> tuple[str, ...]:
    return tuple(subset_label(s) for s in subsets(n))


def from_tu_game(v: TUGame) -> InteractionState:
    """Diagonal activity matrix ``V_SS = v(S)`` on the agent set ``X = 2^N``."""
    return InteractionState(np.diag(v.as_float()), _coalition_agents(v.n))


def from_biset(n: int, b: Mapping[tuple[Iterable[int], Iterable[int]], float]) -> InteractionState:
    """Matrix ``V_ST = v(S, T)`` of a bicooperative game; zero off the disjoint pairs."""
    v = np.zeros((1 << n, 1 << n))
    for (s, t), value in b.items():
        i, j = subset_index(s), subset_index(t)
        if i & j:
            raise PreconditionError(
                f"biset function is defined on disjoint pairs only: {subset_label(s)} and {subset_label(t)} intersect"
            )
        v[i, j] = value
    return InteractionState(v, _coalition_agents(n))


def from_2additive(singletons, pairs, agents: Sequence[str] = (), tol: float = 1e-12) -> InteractionState:
    """Interaction matrix of a 2-additive game: ``I_xx = I_x``, ``I_xy`` off the diagonal.

    ``pairs`` is a symmetric ``n x n`` array (its diagonal is ignored).
    """
    singletons = np.asarray(singletons, dtype=float)
    pairs = as_real_square(pairs, "pairwise interaction")
    if pairs.shape[0] != singletons.size:
        raise ShapeError("pairwise interaction matrix does not match the number of players")
    if np.max(np.abs(pairs - pairs.T)) > tol:
        raise PreconditionError("pairwise interaction indices must be symmetric")
    m = pairs.copy()
    np.fill_diagonal(m, singletons)
    return InteractionState(m, tuple(agents))


def transaction_state(t, agents: Sequence[str] = (), tol: float = 1e-12) -> InteractionState:
    """Buyer/seller transaction matrix; must be skew-symmetric (``t_xy + t_yx = 0``)."""
    t = as_real_square(t, "transaction matrix")
    if np.max(np.abs(t + t.T)) > tol:
        raise PreconditionError("transaction matrix must be skew-symmetric (t_xy + t_yx = 0)")
    return InteractionState(t, tuple(agents))


def influence_state(a, agents: Sequence[str] = ()) -> InteractionState:
    """Influence (or communication) network matrix; any real square matrix."""
    return InteractionState(a, tuple(agents))
