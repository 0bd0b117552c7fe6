"""Orthonormalize-then-store pipeline.

``fit`` runs Gram-Schmidt over the keys and stores the pairs (z_k -> y_k) in
a correlation matrix memory.  Because the z's are orthonormal that memory
recalls every stored pair without crosstalk.  What to feed it at query time
is a choice, exposed as :class:`QueryMode`:

``Z``
    the caller already holds orthonormal-basis stimuli z_k;
``X``
    an original-coordinate stimulus x is mapped to basis coordinates
    (``c = Z^H x``), the triangular system ``R a = c`` is solved, and the
    memorized vectors are mixed with weights ``a``.  Stored keys come back
    exactly as their memorized partners;
``RAW``
    x is applied to the z-memory unchanged.  Kept only to show the crosstalk
    that returns when the query side is left untransformed.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, SingularSolveError
from .qcmm import MemoryMatrix, make_pairs, recall, train_batch
from .qop import DEFAULT_TOL, GSFactors, GSMode, gram_schmidt
from .states import key_matrix


class QueryMode(enum.Enum):
    Z = "z"
    X = "x"
    RAW = "raw"


@dataclass(frozen=True, eq=False)
class EqcmmModel:
    factors: GSFactors
    Y: np.ndarray
    memory_z: MemoryMatrix
    key_index: tuple  # pair index -> Z column, None for dropped pairs

    @property
    def dim(self):
        return self.factors.dim

    @property
    def n_pairs(self):
        return self.Y.shape[1]

    @property
    def dropped(self):
        return self.factors.dropped

    @property
    def Y_kept(self):
        return self.Y[:, list(self.factors.kept)]


def fit(pairs, mode=GSMode.MODIFIED, tol=DEFAULT_TOL, reorthogonalize=False):
    """Orthonormalize the keys of `pairs` and train the memory on the result.

    Pairs whose keys are linearly dependent on earlier ones are left out of
    the memory and listed in ``model.dropped``.
    """
    pairs = list(pairs)
    X = key_matrix([p[0] for p in pairs])
    Y = key_matrix([p[1] for p in pairs])
    factors = gram_schmidt(X, mode=mode, tol=tol, reorthogonalize=reorthogonalize)
    kept = factors.kept
    memory_z = train_batch(make_pairs(factors.Z, Y[:, list(kept)]))
    col = {k: i for i, k in enumerate(kept)}
    key_index = tuple(col.get(k) for k in range(X.shape[1]))
    return EqcmmModel(factors=factors, Y=Y, memory_z=memory_z, key_index=key_index)


def _stimulus(model, v):
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim not in (1, 2) or v.shape[0] != model.dim:
        raise ShapeError(f"stimulus of shape {v.shape} does not fit dimension {model.dim}")
    return v


def recall_z(model, z):
    """Apply the z-memory to a stimulus already expressed in the orthonormal basis."""
    return recall(model.memory_z, _stimulus(model, z))


def recall_raw(model, x):
    """Apply the z-memory to an untransformed stimulus."""
    return recall(model.memory_z, _stimulus(model, x))


def back_substitute(U, c, tol):
    """Solve ``U a = c`` for upper-triangular `U`; `c` may hold several columns."""
    r = U.shape[0]
    a = np.zeros(c.shape, dtype=np.complex128)
    for i in range(r - 1, -1, -1):
        pivot = U[i, i]
        if abs(pivot) <= tol:
            raise SingularSolveError(f"pivot {i} has modulus {abs(pivot):.3e} <= tol={tol:g}")
        a[i] = (c[i] - U[i, i + 1:] @ a[i + 1:]) / pivot
    return a


def basis_coordinates(factors, x):
    """Coordinates ``<z_i|x>`` of `x`, computed the way the factors were built.

    Modified factors subtract each component before taking the next one, so
    a stored key reproduces its own column of R even when Z has lost some
    orthogonality; classical factors project onto all of Z at once.
    """
    Z = factors.Z
    if factors.mode is GSMode.CLASSICAL:
        return Z.conj().T @ x
    v = np.array(x, dtype=np.complex128)
    c = np.empty((Z.shape[1],) + v.shape[1:], dtype=np.complex128)
    for i in range(Z.shape[1]):
        z = Z[:, i]
        c[i] = z.conj() @ v
        v -= np.multiply.outer(z, c[i])
    return c


def recall_x(model, x):
    """Recall from an original-coordinate stimulus.

    For a stored key x_j this returns y_j; for a general x it returns
    ``Y X^+ x`` restricted to the kept pairs.
    """
    x = _stimulus(model, x)
    f = model.factors
    c = basis_coordinates(f, x)
    a = back_substitute(f.R_kept, c, f.tol)
    return model.Y_kept @ a


_DISPATCH = {QueryMode.Z: recall_z, QueryMode.X: recall_x, QueryMode.RAW: recall_raw}


def query(model, stimulus, mode=QueryMode.X):
    """Recall with the given :class:`QueryMode` (``"z"``, ``"x"`` or ``"raw"``)."""
    return _DISPATCH[QueryMode(mode)](model, stimulus)
