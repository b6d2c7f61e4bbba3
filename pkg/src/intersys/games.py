"""Decision games on binary decision systems and the Eisert quantum protocol.

Outcomes of the ``m`` decision makers use the coalition index order of
:mod:`intersys.decision`.  In the two-maker Prisoners' Dilemma, maker ``j`` is
the qubit of player ``j``, alternative 0 is *cooperate* and 1 is *defect*; the
outcome string ``"j1j2"`` (player 1 first) maps to index ``j1 + 2 j2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .decision import DecisionState, density, index_outcome
from .errors import PreconditionError, ShapeError
from .linalg import adjoint, frobenius_inner, is_unitary
from .measurement import CROSS_CHECK_TOL

UNITARY_TOL = 1e-10

PI1 = np.array([[1, 0], [0, -1]], dtype=complex)
PI2 = np.array([[0, 1], [1, 0]], dtype=complex)
PI3_HAT = np.array([[0, -1j], [1j, 0]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

NAMED_STRATEGIES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "pauli1": PI1,
    "pauli2": PI2,
    "pauli3": PI3_HAT,
    "hadamard": HADAMARD,
}

# (player 1, player 2) rewards keyed by outcome string "j1j2", 0 = cooperate.
PRISONERS_DILEMMA = {"00": (3, 3), "01": (0, 5), "10": (5, 0), "11": (1, 1)}


def local_operator(*ops) -> np.ndarray:
    """``ops[0] x ops[1] x ...`` with ``ops[0]`` acting on maker 1 (the lowest bit)."""
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(op, out)
    return out


def entangler() -> np.ndarray:
    """Maximally entangling ``J = (I x I + i pi2 x pi2) / sqrt(2)``."""
    return (np.eye(4) + 1j * local_operator(PI2, PI2)) / np.sqrt(2)


def payoff_vectors(payoffs: Mapping[str, Sequence[float]], m: int = 2) -> np.ndarray:
    """Convert ``{"j1...jm": (p1, p2, ...)}`` into an array ``[player, outcome index]``."""
    if len(payoffs) != 1 << m:
        raise ShapeError(f"need rewards for all {1 << m} outcomes, got {len(payoffs)}")
    rows = {}
    for key, rewards in payoffs.items():
        if len(key) != m or set(key) - {"0", "1"}:
            raise ShapeError(f"outcome key {key!r} is not a {m}-bit string")
        rows[sum(int(b) << i for i, b in enumerate(key))] = [float(r) for r in rewards]
    widths = {len(r) for r in rows.values()}
    if len(widths) != 1:
        raise ShapeError("every outcome needs the same number of player rewards")
    return np.array([rows[i] for i in range(1 << m)]).T


def payoff_mapping(vectors: np.ndarray, m: int = 2) -> dict[str, list[float]]:
    """Inverse of :func:`payoff_vectors`."""
    vectors = np.asarray(vectors)
    return {
        "".join(str(b) for b in index_outcome(i, m)): [float(x) for x in vectors[:, i]]
        for i in range(1 << m)
    }


def _check_unitary(u, what: str) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ShapeError(f"{what} must be a square matrix")
    if not is_unitary(u, UNITARY_TOL):
        raise PreconditionError(f"{what} is not unitary")
    return u


@dataclass(frozen=True, eq=False)
class DecisionGame:
    """Players steer ``m`` binary decision makers; player ``j`` earns ``payoffs[j, k]`` on outcome ``k``.

    ``strategies[j]`` maps strategy names to 2x2 unitaries for player ``j``.
    ``initializer`` is the unitary ``U`` preparing ``U|0...0>``.
    """

    payoffs: np.ndarray
    initializer: np.ndarray
    strategies: tuple[dict[str, np.ndarray], ...] = field(default=())
    m: int = 2

    def __post_init__(self):
        p = np.asarray(self.payoffs, dtype=float)
        if p.ndim != 2 or p.shape[1] != 1 << self.m:
            raise ShapeError(f"payoffs must have shape (players, {1 << self.m}), got {p.shape}")
        object.__setattr__(self, "payoffs", p)
        u = _check_unitary(self.initializer, "initializer")
        if u.shape[0] != 1 << self.m:
            raise ShapeError(f"initializer must act on {1 << self.m} outcomes")
        object.__setattr__(self, "initializer", u)
        sets = []
        for j, named in enumerate(self.strategies):
            checked = {}
            for name, op in named.items():
                op = _check_unitary(op, f"strategy {name!r} of player {j + 1}")
                if op.shape != (2, 2):
                    raise ShapeError(f"strategy {name!r} must be 2x2")
                checked[str(name)] = op
            sets.append(checked)
        object.__setattr__(self, "strategies", tuple(sets))

    @property
    def players(self) -> int:
        return self.payoffs.shape[0]

    @classmethod
    def eisert(
        cls,
        strategy_names: Sequence[str] = ("I", "pauli1", "pauli2"),
        payoffs: Mapping[str, Sequence[float]] = PRISONERS_DILEMMA,
        initializer=None,
    ) -> DecisionGame:
        """Two-player quantum Prisoners' Dilemma; ``initializer`` defaults to :func:`entangler`."""
        u = entangler() if initializer is None else initializer
        named = {name: NAMED_STRATEGIES[name] for name in strategy_names}
        return cls(payoff_vectors(payoffs), u, (named, dict(named)))

    def expected_payoff(self, player: int, state: DecisionState) -> float:
        return expected_payoff(self.payoffs[player], state)


def expected_payoff(rewards, state: DecisionState) -> float:
    """``sum_k p_k |delta_k|^2``, cross-checked against the diagonal measurement ``<P|delta delta*>``."""
    rewards = np.asarray(rewards, dtype=float)
    if rewards.shape != state.coeffs.shape:
        raise ShapeError(f"{rewards.size} rewards for {state.coeffs.size} outcomes")
    direct = float(rewards @ (np.abs(state.coeffs) ** 2))
    as_measurement = frobenius_inner(np.diag(rewards), density(state))
    if abs(as_measurement - direct) > CROSS_CHECK_TOL * max(1.0, float(np.abs(rewards).max())):
        raise ArithmeticError(f"payoff mismatch: {direct!r} vs {as_measurement!r}")
    return direct


def eisert_play(game: DecisionGame, a, b) -> DecisionState:
    """Final state ``U* (A x B) U |00>``; ``a`` and ``b`` are names or 2x2 unitaries."""
    if game.m != 2:
        raise ShapeError("the Eisert protocol is defined for two decision makers")
    ops = []
    for j, s in enumerate((a, b)):
        if isinstance(s, str):
            if j < len(game.strategies) and s in game.strategies[j]:
                s = game.strategies[j][s]
            elif s in NAMED_STRATEGIES:
                s = NAMED_STRATEGIES[s]
            else:
                raise KeyError(f"unknown strategy {s!r} for player {j + 1}")
        ops.append(_check_unitary(s, f"strategy of player {j + 1}"))
    u = game.initializer
    start = np.zeros(4, dtype=complex)
    start[0] = 1
    final = adjoint(u) @ local_operator(*ops) @ u @ start
    return DecisionState(2, 2, final)


@dataclass(frozen=True, eq=False)
class PayoffTable:
    """Per-player payoffs ``values[player, s1, s2]`` over the named strategy profiles."""

    names: tuple[tuple[str, ...], tuple[str, ...]]
    values: np.ndarray
    states: dict[tuple[str, str], DecisionState] = field(default_factory=dict)

    def profiles(self):
        return list(product(range(len(self.names[0])), range(len(self.names[1]))))

    def label(self, profile: tuple[int, int]) -> tuple[str, str]:
        return self.names[0][profile[0]], self.names[1][profile[1]]


def payoff_table(game: DecisionGame) -> PayoffTable:
    if len(game.strategies) != 2 or game.players != 2:
        raise ShapeError("payoff tables are built for two players with finite strategy sets")
    names = (tuple(game.strategies[0]), tuple(game.strategies[1]))
    values = np.empty((2, len(names[0]), len(names[1])))
    states = {}
    for i, a in enumerate(names[0]):
        for k, b in enumerate(names[1]):
            final = eisert_play(game, a, b)
            states[(a, b)] = final
            for j in range(2):
                values[j, i, k] = game.expected_payoff(j, final)
    return PayoffTable(names, values, states)


def nash_equilibria(table: PayoffTable, tol: float = 1e-12) -> list[tuple[str, str]]:
    """Pure-strategy profiles where neither player gains more than ``tol`` by deviating."""
    p1, p2 = table.values
    found = []
    for i, k in table.profiles():
        if p1[i, k] >= p1[:, k].max() - tol and p2[i, k] >= p2[i, :].max() - tol:
            found.append(table.label((i, k)))
    return found


def pareto_front(table: PayoffTable, tol: float = 1e-12) -> list[tuple[str, str]]:
    """Profiles whose payoff vector no other profile weakly improves with one strict gain."""
    profiles = table.profiles()
    vecs = {pr: table.values[:, pr[0], pr[1]] for pr in profiles}
    front = []
    for pr in profiles:
        x = vecs[pr]
        dominated = any(np.all(y >= x - tol) and np.any(y > x + tol) for q, y in vecs.items() if q != pr)
        if not dominated:
            front.append(table.label(pr))
    return front
