"""Complex state vectors in Dirac vocabulary.

States are plain 1-D ``complex128`` numpy arrays (kets); matrices are 2-D
``complex128`` arrays.  The inner product is conjugate-linear in its first
argument, so ``inner(a, b)`` is the bracket <a|b>.
"""
import numpy as np

from .errors import DomainError, ShapeError, ZeroVectorError

#: Energy at or below which a state is treated as the zero vector.
EPS_ZERO = 1e-14


def as_state(v):
    """Coerce `v` to a finite 1-D complex128 array (copy-free when possible)."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeError(f"a state must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("state amplitudes must be finite")
    return arr


def as_matrix(a):
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix entries must be finite")
    return arr


def key_matrix(states):
    """Stack a sequence of states as the columns of an ``m x q`` matrix.

    A 2-D array is taken to already hold one state per column.
    """
    if isinstance(states, np.ndarray) and states.ndim == 2:
        return as_matrix(states)
    vecs = [as_state(s) for s in states]
    if not vecs:
        raise DomainError("empty state list")
    dims = {v.shape[0] for v in vecs}
    if len(dims) != 1:
        raise ShapeError(f"states have mixed dimensions {sorted(dims)}")
    return np.stack(vecs, axis=1)


def basis(m, i):
    """Computational basis ket |i> in dimension `m`."""
    if not 0 <= i < m:
        raise DomainError(f"basis index {i} outside [0, {m})")
    v = np.zeros(m, dtype=np.complex128)
    v[i] = 1.0
    return v


def bloch_to_state(theta, phi):
    """Qubit ``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``.

    Parameters
    ----------
    theta : float
        Polar angle, ``0 <= theta <= pi``.
    phi : float
        Azimuth, ``0 <= phi < 2 pi``.
    """
    theta = float(theta)
    phi = float(phi)
    if not 0.0 <= theta <= np.pi:
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    if not 0.0 <= phi < 2.0 * np.pi:
        raise DomainError(f"phi={phi!r} outside [0, 2*pi)")
    half = theta / 2.0
    return np.array([np.cos(half), np.sin(half) * np.exp(1j * phi)], dtype=np.complex128)


def _check_same_dim(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def inner(a, b):
    """Bracket <a|b> = sum(conj(a_l) * b_l)."""
    a = as_state(a)
    b = as_state(b)
    _check_same_dim(a, b)
    return complex(np.vdot(a, b))


def energy(v):
    """Squared Euclidean norm <v|v>, returned as a real number."""
    v = as_state(v)
    return float(np.vdot(v, v).real)


def norm(v):
    return float(np.sqrt(energy(v)))


def normalize(v):
    """Scale `v` to unit energy.

    Raises
    ------
    ZeroVectorError
        If the energy of `v` is at or below ``EPS_ZERO``.
    """
    v = as_state(v)
    e = energy(v)
    if e <= EPS_ZERO:
        raise ZeroVectorError(f"cannot normalize a state with energy {e:.3e}")
    return v / np.sqrt(e)


def cosine(a, b):
    """Complex cosine <a|b> / (||a|| ||b||); its modulus never exceeds 1."""
    a = as_state(a)
    b = as_state(b)
    _check_same_dim(a, b)
    ea, eb = energy(a), energy(b)
    if ea <= EPS_ZERO or eb <= EPS_ZERO:
        raise ZeroVectorError("cosine is undefined for a zero vector")
    return complex(np.vdot(a, b)) / np.sqrt(ea * eb)


def outer(y, x):
    """Ket-bra |y><x|, an ``len(y) x len(x)`` matrix with entries y_i conj(x_j)."""
    y = as_state(y)
    x = as_state(x)
    return np.outer(y, x.conj())
