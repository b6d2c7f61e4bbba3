"""Linear transforms of state vectors over ``2^N`` and the Fourier transform on ``C^k``.

The subset transforms are tensor powers of a 2x2 operator acting on each
player's bit.  They are applied with a butterfly over the bits (cost
``O(n 2^n)``) rather than by building the ``2^n x 2^n`` matrix.

Naming: :func:`zeta_apply` applies ``Z^n`` with ``Z|0> = |0> + |1>`` and
``Z|1> = |1>`` (game theorists often call ``Z^n v`` the Moebius transform of
``v``); :func:`moebius_apply` applies its inverse ``M^n`` with
``M|0> = |0> - |1>`` and ``M|1> = |1>``.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError
from .linalg import adjoint, as_square
from .tugame import TUGame, index_subset, n_from_length, popcounts

_SQRT_HALF = np.sqrt(0.5)


def _butterfly(x, op) -> np.ndarray:
    """Apply ``op`` (acting on the pair (bit off, bit on)) along every bit of ``x``."""
    x = np.array(x)
    if x.ndim != 1:
        raise ShapeError(f"expected a vector, got shape {x.shape}")
    n = n_from_length(x.size)
    for j in range(n):
        # index = high * 2^(j+1) + bit * 2^j + low
        y = x.reshape(-1, 2, 1 << j)
        lo, hi = op(y[:, 0, :], y[:, 1, :])
        y[:, 0, :], y[:, 1, :] = lo, hi
    return x


def zeta_apply(alpha) -> np.ndarray:
    """``(Z^n alpha)_T = sum_{S subset of T} alpha_S``.

    Integer inputs stay integer, so the transform is exact on integer games.
    """
    return _butterfly(alpha, lambda a0, a1: (a0, a1 + a0))


def moebius_apply(alpha) -> np.ndarray:
    """Inverse of :func:`zeta_apply`: ``(M^n alpha)_S = sum_{T subset of S} (-1)^{|S - T|} alpha_T``."""
    return _butterfly(alpha, lambda a0, a1: (a0, a1 - a0))


def hadamard_apply(alpha) -> np.ndarray:
    """``(H^n alpha)_T = 2^{-n/2} sum_S (-1)^{|S & T|} alpha_S``; self-inverse and norm preserving."""
    x = np.asarray(alpha)
    if x.dtype.kind in "biu":
        x = x.astype(float)
    return _butterfly(x, lambda a0, a1: ((a0 + a1) * _SQRT_HALF, (a0 - a1) * _SQRT_HALF))


def harsanyi_coefficients(v: TUGame) -> dict[tuple[frozenset[int], frozenset[int]], float]:
    """``h_ST = (-1)^{|S - T|} vhat(T)`` for all ``T`` contained in ``S``, with ``vhat = Z^n v``.

    Summing ``h_ST`` over ``T`` gives back ``v(S)``.
    """
    vhat = zeta_apply(v.values)
    coeffs = {}
    for s in range(1 << v.n):
        big = index_subset(s)
        t = s
        while True:
            sign = -1 if bin(s & ~t).count("1") % 2 else 1
            coeffs[(big, index_subset(t))] = sign * vhat[t]
            if t == 0:
                break
            t = (t - 1) & s
    return coeffs


def banzhaf_interaction(v: TUGame) -> np.ndarray:
    """Banzhaf interaction transform ``I(S) = 2^{-(n-s)} sum_T (-1)^{|S - T|} v(T)``.

    Per player the transform acts as ``[[1/2, 1/2], [-1, 1]]``: a player outside
    ``S`` averages over joining or not, a player inside takes the marginal
    difference.  Returned as a float vector in coalition index order.
    """
    return _butterfly(v.as_float(), lambda a0, a1: ((a0 + a1) / 2, a1 - a0))


def banzhaf_inverse(values) -> np.ndarray:
    """Recover ``v`` from its Banzhaf interaction transform; per player ``[[1, -1/2], [1, 1/2]]``."""
    x = np.asarray(values, dtype=float)
    return _butterfly(x, lambda i0, i1: (i0 - i1 / 2, i0 + i1 / 2))


def banzhaf_from_hadamard(v: TUGame) -> np.ndarray:
    """``(-2)^s 2^{-n/2} (H^n v)(S)``, which equals :func:`banzhaf_interaction`."""
    s = popcounts(v.n)
    return (-2.0) ** s * 2.0 ** (-v.n / 2) * hadamard_apply(v.as_float())


def _omega_powers(k: int, offset: int) -> np.ndarray:
    j = np.arange(offset, k + offset)
    # reduce exponents mod k before exponentiating to keep entries exact-ish
    return np.exp(2j * np.pi * (np.outer(j, j) % k) / k)


def fourier_matrix(k: int, convention: str = "one_based") -> np.ndarray:
    """Unitary Fourier matrix on ``C^k`` with ``omega = exp(2 pi i / k)``.

    ``convention="one_based"`` gives entries ``omega^(jl) / sqrt(k)`` for
    ``j, l = 1..k``; ``convention="zero_based"`` uses ``j, l = 0..k-1`` (the usual
    DFT matrix up to the sign of the exponent).  The two differ only by row and
    column phases, see :func:`one_based_to_zero_based`.
    """
    if k < 1:
        raise ShapeError("Fourier matrix needs k >= 1")
    if convention == "one_based":
        return _omega_powers(k, 1) / np.sqrt(k)
    if convention == "zero_based":
        return _omega_powers(k, 0) / np.sqrt(k)
    raise ValueError(f"unknown convention {convention!r}")


def one_based_to_zero_based(omega_matrix) -> np.ndarray:
    """Convert the 1-based Fourier matrix to the 0-based one.

    With ``D = diag(omega^j)``, ``j = 0..k-1``, the 1-based matrix is
    ``omega * D F0 D``; hence ``F0 = conj(omega) D* Omega D*``.
    """
    m = as_square(omega_matrix)
    k = m.shape[0]
    d = np.exp(-2j * np.pi * np.arange(k) / k)
    return np.exp(-2j * np.pi / k) * (d[:, None] * m * d[None, :])


def fourier_apply(v, convention: str = "one_based") -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1:
        raise ShapeError(f"expected a vector, got shape {v.shape}")
    return fourier_matrix(v.size, convention) @ v


def conjugate(m, c) -> np.ndarray:
    """``C -> M C M*``; preserves self-adjointness, and the spectrum when ``M`` is unitary."""
    m = as_square(m, "M")
    c = as_square(c, "C")
    if m.shape != c.shape:
        raise ShapeError(f"dimension mismatch: {m.shape} vs {c.shape}")
    return m @ c @ adjoint(m)
