"""Closed-form analysis of a two-agent influence system under Schroedinger evolution.

The agents have activity levels ``w1, w2`` in ``[0, 1]``.  Three sign patterns
of the interaction weights are supported:

* ``conformist``      ``A   = [[w1, 1 - w1], [1 - w2, w2]]``
* ``anticonformist``  ``A'  = [[w1, w1 - 1], [w2 - 1, w2]]``
* ``mixed``           ``A'' = [[w1, 1 - w1], [w2 - 1, w2]]``

The hermitian representation is the Hamiltonian and ``psi(0) = e1``.  Writing
``Ahat_12 = |Ahat_12| exp(-i phi)``,

    E0 = W / 2,   Delta = sqrt(((w1 - w2) / 2)**2 + |Ahat_12|**2),
    tan(theta) = |Ahat_12| / ((w1 - w2) / 2),

with ``theta`` in ``[0, pi]`` (so ``sin(theta) >= 0``) and ``phi`` in
``(-pi, pi]``.  The three kinds share ``|Ahat_12|``, hence ``E0``, ``Delta``
and ``theta``; only ``phi`` differs.  At ``w1 = w2 = 1`` the matrix is the
identity, ``Delta = 0``, and the period is undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import DegenerateModelError, PreconditionError
from ..interaction import hermitian_repr
from .core import schrodinger_propagator

KINDS = ("conformist", "anticonformist", "mixed")
VARIANT_TOL = 1e-10
DEGENERATE_TOL = 1e-14


def variant_matrix(w1: float, w2: float, kind: str = "conformist") -> np.ndarray:
    if kind == "conformist":
        return np.array([[w1, 1 - w1], [1 - w2, w2]], dtype=float)
    if kind == "anticonformist":
        return np.array([[w1, w1 - 1], [w2 - 1, w2]], dtype=float)
    if kind == "mixed":
        return np.array([[w1, 1 - w1], [w2 - 1, w2]], dtype=float)
    raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


@dataclass(frozen=True)
class TwoAgentModel:
    """Parameters of the two-agent system; every derived quantity is closed form."""

    w1: float
    w2: float
    hbar: float = 1.0
    kind: str = "conformist"

    def __post_init__(self):
        for name in ("w1", "w2"):
            w = float(getattr(self, name))
            if not 0.0 <= w <= 1.0:
                raise PreconditionError(f"{name} must lie in [0, 1], got {w!r}")
            object.__setattr__(self, name, w)
        if not self.hbar > 0:
            raise PreconditionError("hbar must be positive")
        object.__setattr__(self, "hbar", float(self.hbar))
        variant_matrix(0.0, 0.0, self.kind)

    @property
    def W(self) -> float:
        return self.w1 + self.w2

    @property
    def dW(self) -> float:
        return self.w1 - self.w2

    @cached_property
    def matrix(self) -> np.ndarray:
        return variant_matrix(self.w1, self.w2, self.kind)

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        return hermitian_repr(self.matrix)

    @property
    def offdiag(self) -> complex:
        """``Ahat_12``."""
        return complex(self.hamiltonian[0, 1])

    @property
    def E0(self) -> float:
        return self.W / 2

    @property
    def delta(self) -> float:
        return float(np.hypot(self.dW / 2, abs(self.offdiag)))

    @property
    def theta(self) -> float:
        return float(np.arctan2(abs(self.offdiag), self.dW / 2))

    @property
    def phi(self) -> float:
        b = self.offdiag
        if abs(b) == 0:
            return 0.0
        phi = -float(np.angle(b)) + 0.0
        return np.pi if phi <= -np.pi else phi

    @property
    def phase(self) -> complex:
        """``exp(-i phi) = Ahat_12 / |Ahat_12|`` computed without going through the angle."""
        b = self.offdiag
        return b / abs(b) if abs(b) else 1 + 0j

    @property
    def eigenvalues(self) -> tuple[float, float]:
        return self.E0 + self.delta, self.E0 - self.delta

    def eigenvectors(self) -> np.ndarray:
        """Columns ``u1 = (cos(theta/2), e^{i phi} sin(theta/2))`` and ``u2 = (-sin(theta/2), e^{i phi} cos(theta/2))``."""
        c, s = np.cos(self.theta / 2), np.sin(self.theta / 2)
        e = np.exp(1j * self.phi)
        return np.array([[c, -s], [e * s, e * c]], dtype=complex)

    @property
    def degenerate(self) -> bool:
        return self.delta <= DEGENERATE_TOL


def two_agent(w1: float, w2: float, hbar: float = 1.0) -> TwoAgentModel:
    return TwoAgentModel(w1, w2, hbar)


def two_agent_variants(w1: float, w2: float, kind: str = "conformist", hbar: float = 1.0) -> TwoAgentModel:
    """Model for one of the three sign patterns.

    Checks that ``E0``, ``Delta`` and ``theta`` agree with the other two kinds
    to ``1e-10`` and raises :class:`ArithmeticError` otherwise.
    """
    models = {k: TwoAgentModel(w1, w2, hbar, k) for k in KINDS}
    chosen = models[kind] if kind in models else TwoAgentModel(w1, w2, hbar, kind)
    for other in models.values():
        for attr in ("E0", "delta", "theta"):
            a, b = getattr(chosen, attr), getattr(other, attr)
            if abs(a - b) > VARIANT_TOL:
                raise ArithmeticError(f"{attr} differs between {chosen.kind} and {other.kind}: {a!r} vs {b!r}")
    return chosen


def psi(model: TwoAgentModel, t) -> np.ndarray:
    """Closed-form state at time ``t``; for an array of times the result has shape ``(len(t), 2)``."""
    t = np.asarray(t, dtype=float)
    x = t * model.delta / model.hbar
    glob = np.exp(-1j * model.E0 * t / model.hbar)
    first = glob * (np.cos(x) - 1j * np.cos(model.theta) * np.sin(x))
    second = glob * (-1j * np.exp(1j * model.phi) * np.sin(model.theta) * np.sin(x))
    return np.stack([first, second], axis=-1)


def propagated_psi(model: TwoAgentModel, t: float) -> np.ndarray:
    """``exp(-i Ahat t / hbar) e1`` from the spectral propagator."""
    return schrodinger_propagator(model.hamiltonian, t, model.hbar)[:, 0]


def transition_probability(model: TwoAgentModel, t):
    """``sin^2(theta) sin^2(t Delta / hbar)``, the probability of finding the system in ``e2``."""
    x = np.asarray(t, dtype=float) * model.delta / model.hbar
    p = np.sin(model.theta) ** 2 * np.sin(x) ** 2
    return float(p) if p.ndim == 0 else p


def max_amplitude(model: TwoAgentModel) -> float:
    """``sin^2(theta)``; zero for the degenerate identity matrix."""
    return float(np.sin(model.theta) ** 2)


def max_amplitude_formula(w1: float, w2: float) -> float:
    """``1 - dW^2 / (4 + W^2 - 4W + 2 dW^2)``; undefined (0/0) at ``w1 = w2 = 1``."""
    W, dW = w1 + w2, w1 - w2
    denom = 4 + W * W - 4 * W + 2 * dW * dW
    if denom == 0:
        raise DegenerateModelError("amplitude formula is 0/0 at w1 = w2 = 1")
    return 1 - dW * dW / denom


def eigenvalue_formula(w1: float, w2: float) -> tuple[float, float]:
    """``(W +- sqrt((W - 2)^2 + 2 dW^2)) / 2``."""
    W, dW = w1 + w2, w1 - w2
    r = np.sqrt((W - 2) ** 2 + 2 * dW * dW)
    return (W + r) / 2, (W - r) / 2


def period(model: TwoAgentModel) -> float:
    """``pi hbar / Delta``; raises :class:`DegenerateModelError` when ``Delta = 0``."""
    if model.degenerate:
        raise DegenerateModelError(
            f"Delta = 0 at (w1, w2) = ({model.w1}, {model.w2}): the state is stationary and has no period"
        )
    return float(np.pi * model.hbar / model.delta)
