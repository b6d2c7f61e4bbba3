"""Discrete-time linear (Markov) evolutions and their Cesaro averages.

A Markov evolution iterates a fixed linear operator ``Phi`` on a state
vector.  It is mean ergodic (the running averages converge) exactly when the
orbit is bounded.  Matrix-valued states are flattened row-major before
``Phi`` is applied.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, NamedTuple

import numpy as np

from ..errors import PreconditionError, ShapeError
from ..linalg import DEFAULT_TOL, adjoint, as_square, eigh

DEFAULT_NORM_CAP = 1e150
STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    """States ``a_0 .. a_T`` and running means ``(1/t) sum_{m=1..t} a_m``.

    ``means[0]`` is set to ``a_0``.  ``capped`` is true when the orbit crossed
    the norm cap (or overflowed) and the trace was cut short there.
    """

    states: np.ndarray
    means: np.ndarray
    capped: bool = False

    def __len__(self) -> int:
        return len(self.states)

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    def norms(self) -> np.ndarray:
        flat = self.states.reshape(len(self.states), -1)
        return np.linalg.norm(flat, axis=1)


def running_means(states: np.ndarray) -> np.ndarray:
    means = np.empty_like(states)
    means[0] = states[0]
    if len(states) > 1:
        t = np.arange(1, len(states)).reshape((-1,) + (1,) * (states.ndim - 1))
        means[1:] = np.cumsum(states[1:], axis=0) / t
    return means


def _chunk(dim: int) -> int:
    return int(max(1, min(256, 2**22 // max(1, dim * dim))))


def evolve(phi, a0, steps: int, norm_cap: float = DEFAULT_NORM_CAP) -> EvolutionTrace:
    """Iterate ``a_{t+1} = Phi a_t`` for ``t = 0 .. steps - 1``.

    Parameters
    ----------
    phi : (d, d) array_like
        Evolution operator acting on the flattened state.
    a0 : array_like
        Initial state; any shape with ``d`` entries.
    steps : int
        Number of applications of ``Phi``.
    norm_cap : float
        The trace stops at the first state whose norm exceeds this (or is not
        finite), and is flagged as capped.
    """
    phi = as_square(phi, "Phi")
    a0 = np.asarray(a0)
    d = a0.size
    if phi.shape[0] != d:
        raise ShapeError(f"Phi is {phi.shape[0]}x{phi.shape[0]} but the state has {d} entries")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    dtype = np.result_type(phi.dtype, a0.dtype, float)
    phi = phi.astype(dtype)
    states = np.empty((steps + 1, d), dtype=dtype)
    states[0] = a0.reshape(-1)
    end, capped = steps, False
    # Propagate in blocks: powers[j] = Phi^(j+1), so one block is a single batched product.
    block = min(_chunk(d), max(steps, 1))
    with np.errstate(over="ignore", invalid="ignore"):
        powers = np.empty((block, d, d), dtype=dtype)
        powers[0] = phi
        for j in range(1, block):
            powers[j] = phi @ powers[j - 1]
        t = 0
        while t < steps:
            b = min(block, steps - t)
            states[t + 1 : t + 1 + b] = powers[:b] @ states[t]
            norms = np.linalg.norm(states[t + 1 : t + 1 + b], axis=1)
            bad = np.flatnonzero(~np.isfinite(norms) | (norms > norm_cap))
            if bad.size:
                end, capped = t + bad[0], True
                break
            t += b
    states = states[: end + 1].reshape((end + 1,) + a0.shape)
    return EvolutionTrace(states, running_means(states), capped)


class ErgodicVerdict(NamedTuple):
    """Outcome of :func:`ergodic_mean`.

    ``residual`` is the distance between the last two window averages of the
    running means; ``growth`` is the ratio of the largest state norm in the
    second half of the trace to the largest in the first half.
    """

    converged: bool
    limit: np.ndarray
    residual: float
    growth: float
    bounded: bool


def ergodic_mean(
    trace: EvolutionTrace, tol: float = 1e-6, window: int | None = None, growth_limit: float = 1.5
) -> ErgodicVerdict:
    """Windowed Cauchy test on the running means of a trace.

    The means are averaged over the last two windows of ``window`` steps
    (default: one hundredth of the trace).  The evolution is declared
    convergent when those averages differ by less than ``tol`` *and* the orbit
    shows no growth: a capped trace, non-finite values, or a growth ratio
    above ``growth_limit`` all count as unbounded.  The growth check catches
    orbits like ``t (-1)^t`` whose window averages cancel although the means
    themselves oscillate.

    This is a finite-sample diagnostic, not a proof; the last running mean is
    returned as the estimate of the limit.  For a bounded orbit the running
    means behave like ``limit + c / t``, so the residual with the default
    window is about ``|c| / (100 T)``: a tolerance of ``1e-6`` needs
    ``T ~ 1e4 |c|`` steps, where ``c = sum_m (a_m - limit)`` is the transient
    mass of the orbit.
    """
    means = trace.means.reshape(len(trace), -1)
    limit = trace.means[-1]
    t = trace.steps
    if window is None:
        window = max(1, t // 100)
    if t < 2 * window:
        raise ValueError(f"trace of {t} steps is too short for two windows of {window}")
    norms = trace.norms()
    half = (t + 1) // 2
    first, second = norms[:half].max(), norms[half:].max()
    if not np.all(np.isfinite(means)):
        return ErgodicVerdict(False, limit, float("inf"), float("inf"), False)
    growth = 1.0 if second == 0 else float(second / first) if first > 0 else float("inf")
    bounded = not trace.capped and growth <= growth_limit
    recent = means[-window:].mean(axis=0)
    previous = means[-2 * window : -window].mean(axis=0)
    residual = float(np.linalg.norm(recent - previous))
    return ErgodicVerdict(bool(bounded and residual < tol), limit, residual, growth, bounded)


def is_column_stochastic(m, tol: float = STOCHASTIC_TOL) -> bool:
    m = np.asarray(m, dtype=float)
    return bool(np.all(m >= -tol) and np.all(np.abs(m.sum(axis=0) - 1) <= tol))


def markov_chain(m, pi0, steps: int, tol: float = STOCHASTIC_TOL) -> EvolutionTrace:
    """Classical Markov chain ``pi_t = M^t pi_0`` for a column-stochastic ``M``."""
    m = as_square(m, "M")
    if np.iscomplexobj(m) or not is_column_stochastic(m, tol):
        raise PreconditionError("transition matrix must be real, nonnegative, with columns summing to 1")
    pi0 = np.asarray(pi0, dtype=float)
    if pi0.ndim != 1 or np.any(pi0 < -tol) or abs(pi0.sum() - 1) > tol:
        raise PreconditionError("initial distribution must be a nonnegative vector summing to 1")
    return evolve(m.astype(float), pi0, steps)


def schrodinger_propagator(h, t: float, hbar: float = 1.0, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``exp(-i H t / hbar)`` computed from the spectral decomposition of ``H``."""
    if hbar <= 0:
        raise PreconditionError("hbar must be positive")
    lam, u = eigh(h, tol)
    return (u * np.exp(-1j * lam * t / hbar)) @ adjoint(u)


def schrodinger_trace(h, psi0, dt: float, steps: int, hbar: float = 1.0) -> EvolutionTrace:
    """``psi(k dt) = U^k psi(0)`` with the one-step propagator ``U = exp(-i H dt / hbar)``."""
    return evolve(schrodinger_propagator(h, dt, hbar), np.asarray(psi0, dtype=complex), steps)


def write_trace_csv(
    trace: EvolutionTrace,
    out: IO[str],
    times=None,
    transition_probability=None,
) -> None:
    """Write one row per time step: ``t``, state components, running means.

    Complex components get ``_re``/``_im`` columns.  An optional
    ``transition_probability`` column is appended when given.
    """
    states = trace.states.reshape(len(trace), -1)
    means = trace.means.reshape(len(trace), -1)
    cplx = np.iscomplexobj(states)
    times = np.arange(len(trace)) if times is None else np.asarray(times)

    def cols(prefix: str, d: int) -> list[str]:
        if cplx:
            return [f"{prefix}{i}_{part}" for i in range(d) for part in ("re", "im")]
        return [f"{prefix}{i}" for i in range(d)]

    def values(row) -> list[str]:
        if cplx:
            return [_fmt(x) for z in row for x in (z.real, z.imag)]
        return [_fmt(x) for x in row]

    header = ["t", *cols("state", states.shape[1]), *cols("mean", means.shape[1])]
    if transition_probability is not None:
        header.append("transition_probability")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for i in range(len(trace)):
        row = [_fmt(times[i]), *values(states[i]), *values(means[i])]
        if transition_probability is not None:
            row.append(_fmt(transition_probability[i]))
        writer.writerow(row)


def _fmt(x) -> str:
    x = float(x)
    return "0" if x == 0 else f"{x:.12g}"
