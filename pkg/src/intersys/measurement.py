"""Linear measurements on interaction systems and linear values of TU-games."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

import numpy as np

from .errors import ShapeError
from .interaction import InteractionState, as_real_square, hermitian_repr
from .linalg import eigh, frobenius_inner
from .tugame import TUGame, popcounts

CROSS_CHECK_TOL = 1e-10
CLAMP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Measurement:
    """A linear functional ``f(A) = <F|A>`` given by its real representing matrix ``F``."""

    F: np.ndarray

    def __post_init__(self):
        f = as_real_square(self.F, "F").copy()
        f.setflags(write=False)
        object.__setattr__(self, "F", f)

    @property
    def dim(self) -> int:
        return self.F.shape[0]

    @property
    def hermitian(self) -> np.ndarray:
        return hermitian_repr(self.F)

    def __call__(self, s: InteractionState) -> float:
        return measure(self, s)


def _coerce(f, s) -> tuple[Measurement, InteractionState]:
    f = f if isinstance(f, Measurement) else Measurement(f)
    s = s if isinstance(s, InteractionState) else InteractionState(s)
    if f.dim != s.dim:
        raise ShapeError(f"measurement of dimension {f.dim} applied to a {s.dim}-agent system")
    return f, s


def measure(f, s) -> float:
    """Return ``<F|A>``, cross-checked against ``<F^|A^>`` in hermitian coordinates.

    Raises :class:`ArithmeticError` if the two evaluations disagree by more than
    ``1e-10`` relative to ``||F|| ||A||``.
    """
    f, s = _coerce(f, s)
    real_value = float(np.sum(f.F * s.A))
    herm_value = frobenius_inner(f.hermitian, s.hermitian)
    scale = max(1.0, float(np.linalg.norm(f.F) * s.norm))
    if abs(herm_value - real_value) > CROSS_CHECK_TOL * scale:
        raise ArithmeticError(f"measurement mismatch: <F|A> = {real_value!r}, <F^|A^> = {herm_value!r}")
    return real_value


class JointDistribution(NamedTuple):
    """Spectral form of a measurement.

    ``p[x, y] = <V_y V_y*|U_x U_x*>`` pairs eigenvector ``U_x`` of the state
    (eigenvalue ``state_eigenvalues[x]``) with eigenvector ``V_y`` of the
    measurement (eigenvalue ``measurement_eigenvalues[y]``), and
    ``sum_xy lambda_x mu_y p[x, y] = <F|A>``.  Rows and columns of ``p`` each
    sum to 1; the total mass is the dimension.  ``clamped`` counts round-off
    negatives that were set to zero.
    """

    p: np.ndarray
    state_eigenvalues: np.ndarray
    measurement_eigenvalues: np.ndarray
    clamped: int

    def expectation(self) -> float:
        return float(self.state_eigenvalues @ self.p @ self.measurement_eigenvalues)


def joint_probabilities(f, s, tol: float = CLAMP_TOL) -> JointDistribution:
    """Pair the spectral decompositions of ``F^`` and ``A^`` (see :class:`JointDistribution`)."""
    f, s = _coerce(f, s)
    lam, u = eigh(s.hermitian)
    mu, v = eigh(f.hermitian)
    pu = np.einsum("ax,bx->xab", u, np.conj(u))
    pv = np.einsum("ay,by->yab", v, np.conj(v))
    p = np.einsum("yab,xab->xy", np.conj(pv), pu).real
    if np.any(p < -tol):
        raise ArithmeticError(f"joint probability {p.min():.3e} is negative beyond tol")
    clamped = int(np.count_nonzero(p < 0))
    return JointDistribution(np.maximum(p, 0.0), lam, mu, clamped)


def _exact_shapley_weights(n: int) -> list[Fraction]:
    return [Fraction(factorial(n - s - 1) * factorial(s), factorial(n)) for s in range(n)]


def shapley_value(v: TUGame, exact: bool = False):
    """Shapley value by summation over coalitions.

    ``phi_i = sum_{S not containing i} (n-s-1)! s! / n! (v(S + i) - v(S))``.
    Costs ``O(n 2^n)``; practical up to about 20 players.  With ``exact=True``
    the computation runs in :class:`fractions.Fraction` arithmetic (values must
    be integers or fractions) and a list of fractions is returned.
    """
    n = v.n
    if n < 1:
        raise ShapeError("Shapley value needs at least one player")
    sizes = popcounts(n)
    if exact:
        weights = _exact_shapley_weights(n)
        values = [Fraction(x) for x in v.values.tolist()]
        phi = []
        for i in range(n):
            bit = 1 << i
            phi.append(sum((weights[sizes[s]] * (values[s | bit] - values[s]) for s in range(1 << n) if not s & bit), Fraction(0)))
        return phi
    weights = np.array([float(w) for w in _exact_shapley_weights(n)])
    values = v.as_float()
    idx = np.arange(1 << n)
    phi = np.empty(n)
    for i in range(n):
        bit = 1 << i
        out = idx[(idx & bit) == 0]
        phi[i] = np.sum(weights[sizes[out]] * (values[out | bit] - values[out]))
    return phi


def shapley_weights(n: int, player: int) -> np.ndarray:
    """Coefficients ``c_S`` with ``phi_player(v) = sum_S c_S v(S)``."""
    if not 1 <= player <= n:
        raise ValueError(f"player must be in 1..{n}")
    w = [float(x) for x in _exact_shapley_weights(n)]
    bit = 1 << (player - 1)
    sizes = popcounts(n)
    return np.array([w[sizes[s] - 1] if s & bit else -w[sizes[s]] for s in range(1 << n)])


def as_measurement(weights) -> Measurement:
    """Diagonal measurement ``F_SS = weight(S)`` on the coalition system ``X = 2^N``."""
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1:
        raise ShapeError("weights must be a vector over the coalitions")
    return Measurement(np.diag(weights))
