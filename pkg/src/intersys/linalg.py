"""Dense complex matrix helpers: inner products, adjoints and hermitian eigensystems.

Matrices are plain :class:`numpy.ndarray` objects.  Real matrices are accepted
wherever complex ones are and are treated as having zero imaginary part.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NotSelfAdjointError, PreconditionError, ShapeError

DEFAULT_TOL = 1e-9


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-d square array or raise :class:`ShapeError`."""
    m = np.asarray(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ShapeError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    return m


def frobenius_inner(a, b) -> complex:
    """Return ``<A|B> = tr(A* B) = sum conj(A_xy) B_xy``.

    For real matrices this is the usual ``tr(A^T B)``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def self_adjoint_violation(h) -> float:
    """Frobenius norm of ``H - H*``."""
    h = as_square(h)
    return frobenius_norm(h - adjoint(h))


def is_self_adjoint(h, tol: float = DEFAULT_TOL) -> bool:
    return self_adjoint_violation(h) <= tol


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    u = as_square(u)
    return frobenius_norm(adjoint(u) @ u - np.eye(u.shape[0])) <= tol


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (descending) and the unitary matrix of eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def projector(self, x: int) -> np.ndarray:
        u = self.eigenvectors[:, x]
        return np.outer(u, np.conj(u))

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ adjoint(u)


def _fix_phases(u: np.ndarray) -> np.ndarray:
    # Make the first component of largest modulus of each column real and >= 0.
    idx = np.argmax(np.abs(u), axis=0)
    cols = np.arange(u.shape[1])
    lead = u[idx, cols]
    out = u * (np.conj(lead) / np.abs(lead))
    out[idx, cols] = np.abs(lead)
    return out


def eigh(h, tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Spectral decomposition ``H = sum_x lambda_x U_x U_x*`` of a self-adjoint matrix.

    Parameters
    ----------
    h : (d, d) array_like
        Self-adjoint matrix; ``||H - H*||`` must not exceed ``tol``.
    tol : float
        Self-adjointness tolerance.

    Returns
    -------
    SpectralDecomposition
        Real eigenvalues in descending order and a unitary matrix whose columns
        are the matching unit eigenvectors.  Each column is phase-normalised so
        that its first component of largest modulus is real and nonnegative.
        Within degenerate eigenspaces the basis is arbitrary.
    """
    h = as_square(h, "H")
    violation = self_adjoint_violation(h)
    if violation > tol:
        raise NotSelfAdjointError(violation, tol)
    hs = (h + adjoint(h)) / 2
    if np.isrealobj(hs):
        hs = hs.astype(float)
    w, u = np.linalg.eigh(hs)
    order = np.argsort(-w, kind="stable")
    w = np.asarray(w[order], dtype=float)
    u = _fix_phases(np.asarray(u[:, order], dtype=complex))
    return SpectralDecomposition(w, u)


def pure_density(u, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return the pure density ``u u*`` of a unit vector ``u``."""
    u = np.asarray(u, dtype=complex).reshape(-1)
    norm = np.linalg.norm(u)
    if abs(norm - 1.0) > tol:
        raise PreconditionError(f"pure density needs a unit vector, got ||u|| = {norm:.12g}")
    return np.outer(u, np.conj(u))
