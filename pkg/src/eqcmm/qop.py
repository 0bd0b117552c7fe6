"""Gram-Schmidt orthonormalization of a key set, with rank detection.

``gram_schmidt`` turns keys x_1..x_q (columns of X) into an orthonormal set
z_1..z_r and a coefficient matrix R with X ~= Z R.  A key whose residual,
after removing its components along the z's found so far, is tiny relative
to its own norm is reported in ``dropped`` and adds no column to Z.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSetError, DomainError, ZeroVectorError
from .states import EPS_ZERO, key_matrix

DEFAULT_TOL = 1e-10


class GSMode(enum.Enum):
    CLASSICAL = "classical"
    MODIFIED = "modified"


@dataclass(frozen=True, eq=False)
class GSFactors:
    """Result of :func:`gram_schmidt`.

    Attributes
    ----------
    Z : ndarray, shape (m, rank)
        Orthonormal columns.
    R : ndarray, shape (rank, q)
        ``R[i, k] = <z_i|x_k>``; upper triangular on the kept columns.  Dropped
        columns keep their projection coefficients.
    rank : int
    dropped : tuple of int
        0-based indices of keys judged linearly dependent.
    tol : float
    mode : GSMode
    """

    Z: np.ndarray
    R: np.ndarray
    rank: int
    dropped: tuple
    tol: float
    mode: GSMode = GSMode.MODIFIED
    kept: tuple = field(init=False)

    def __post_init__(self):
        dropped = set(self.dropped)
        object.__setattr__(self, "kept", tuple(k for k in range(self.R.shape[1]) if k not in dropped))

    @property
    def dim(self):
        return self.Z.shape[0]

    @property
    def n_keys(self):
        return self.R.shape[1]

    @property
    def R_kept(self):
        """Square upper-triangular block of R on the kept columns."""
        return self.R[:, list(self.kept)]


def _first_key_check(X):
    e = float(np.vdot(X[:, 0], X[:, 0]).real)
    if e <= EPS_ZERO:
        raise ZeroVectorError(f"first key has energy {e:.3e}")


def _classical(X, tol, reorthogonalize):
    m, q = X.shape
    Z = np.zeros((m, min(m, q)), dtype=np.complex128)
    R = np.zeros((q, q), dtype=np.complex128)
    dropped = []
    r = 0
    for k in range(q):
        x = X[:, k]
        v = x
        if r:
            Zr = Z[:, :r]
            coeffs = Zr.conj().T @ x
            v = x - Zr @ coeffs
            if reorthogonalize:
                extra = Zr.conj().T @ v
                v = v - Zr @ extra
                coeffs = coeffs + extra
            R[:r, k] = coeffs
        nv = np.linalg.norm(v)
        if nv <= tol * np.linalg.norm(x) or r == m:
            dropped.append(k)
            continue
        Z[:, r] = v / nv
        R[r, k] = nv
        r += 1
    return Z[:, :r], R[:r], dropped


def _modified(X, tol, reorthogonalize):
    m, q = X.shape
    V = X.copy()
    xnorms = np.linalg.norm(X, axis=0)
    Z = np.zeros((m, min(m, q)), dtype=np.complex128)
    R = np.zeros((q, q), dtype=np.complex128)
    dropped = []
    r = 0
    for k in range(q):
        v = V[:, k]
        if reorthogonalize and r:
            Zr = Z[:, :r]
            extra = Zr.conj().T @ v
            v = v - Zr @ extra
            R[:r, k] += extra
        nv = np.linalg.norm(v)
        if nv <= tol * xnorms[k] or r == m:
            dropped.append(k)
            continue
        z = v / nv
        R[r, k] = nv
        if k + 1 < q:
            coeffs = z.conj() @ V[:, k + 1:]
            V[:, k + 1:] -= np.outer(z, coeffs)
            R[r, k + 1:] = coeffs
        Z[:, r] = z
        r += 1
    return Z[:, :r], R[:r], dropped


def gram_schmidt(keys, mode=GSMode.MODIFIED, tol=DEFAULT_TOL, reorthogonalize=False):
    """Orthonormalize `keys`.

    Parameters
    ----------
    keys : sequence of states, or ndarray of shape (m, q)
        Keys in order; a 2-D array holds one key per column.
    mode : GSMode or str
        ``CLASSICAL`` projects each original key onto all earlier z's at once
        (the textbook recurrence); ``MODIFIED`` removes each new z from the
        remaining keys immediately, which loses far less orthogonality in
        floating point.
    tol : float
        Relative residual threshold for declaring a key dependent.
    reorthogonalize : bool
        Run a second projection pass on every residual.

    Returns
    -------
    GSFactors
    """
    mode = GSMode(mode)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if len(keys) == 0:
        raise DomainError("empty key list")
    X = key_matrix(keys)
    _first_key_check(X)
    run = _classical if mode is GSMode.CLASSICAL else _modified
    Z, R, dropped = run(X, tol, reorthogonalize)
    if Z.shape[1] == 0:
        raise DegenerateSetError("every key was dropped")
    return GSFactors(Z=Z, R=R, rank=Z.shape[1], dropped=tuple(dropped), tol=float(tol), mode=mode)


def orthonormality_residual(Z):
    """Largest entry of ``|Z^H Z - I|``; zero for an orthonormal column set."""
    Z = key_matrix(Z)
    G = Z.conj().T @ Z
    return float(np.max(np.abs(G - np.eye(G.shape[0]))))


def reconstruct(factors):
    """Return ``Z @ R``.  Kept columns reproduce the original keys."""
    return factors.Z @ factors.R
