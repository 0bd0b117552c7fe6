"""Correlation matrix memory: outer-product training, recall and crosstalk."""
import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, EnergyError, ShapeError
from .states import EPS_ZERO, as_matrix, as_state, key_matrix, normalize

UNIT_ENERGY_TOL = 1e-8


class TrainingPair(NamedTuple):
    key: np.ndarray
    memorized: np.ndarray


def make_pairs(keys, memorized):
    """Zip two equally long state sequences into training pairs."""
    keys = list(keys.T) if isinstance(keys, np.ndarray) and keys.ndim == 2 else list(keys)
    memorized = list(memorized.T) if isinstance(memorized, np.ndarray) and memorized.ndim == 2 else list(memorized)
    if len(keys) != len(memorized):
        raise ShapeError(f"{len(keys)} keys but {len(memorized)} memorized states")
    return [TrainingPair(as_state(x), as_state(y)) for x, y in zip(keys, memorized)]


@dataclass(frozen=True, eq=False)
class MemoryMatrix:
    """Memory ``M`` (shape ``m_out x m_in``) built from ``pairs_trained`` associations."""

    M: np.ndarray
    pairs_trained: int = 0

    @classmethod
    def zeros(cls, m_out, m_in=None):
        m_in = m_out if m_in is None else m_in
        return cls(np.zeros((m_out, m_in), dtype=np.complex128), 0)

    @property
    def m_out(self):
        return self.M.shape[0]

    @property
    def m_in(self):
        return self.M.shape[1]


def _check_unit_energy(x, k):
    e = float(np.vdot(x, x).real)
    if abs(e - 1.0) > UNIT_ENERGY_TOL:
        raise EnergyError(f"key {k} has energy {e!r}, expected 1")


def train_step(memory, pair, require_unit_energy=False):
    """One recursion step ``M_k = M_{k-1} + |y_k><x_k|``; returns a new memory."""
    x = as_state(pair[0])
    y = as_state(pair[1])
    if memory.M.shape != (y.shape[0], x.shape[0]):
        raise ShapeError(
            f"pair maps dim {x.shape[0]} -> {y.shape[0]} but memory is "
            f"{memory.m_out}x{memory.m_in}")
    if require_unit_energy:
        _check_unit_energy(x, memory.pairs_trained)
    return MemoryMatrix(memory.M + np.outer(y, x.conj()), memory.pairs_trained + 1)


def train_batch(pairs, require_unit_energy=False):
    """Sum of outer products over `pairs`, accumulated in list order.

    The accumulation is the same fold as repeated :func:`train_step`, so the
    two agree bit for bit.
    """
    pairs = list(pairs)
    if not pairs:
        raise DomainError("no training pairs")
    x0 = as_state(pairs[0][0])
    y0 = as_state(pairs[0][1])
    memory = MemoryMatrix.zeros(y0.shape[0], x0.shape[0])
    for pair in pairs:
        memory = train_step(memory, pair, require_unit_energy)
    return memory


def recall(memory, stimulus):
    """Response ``M @ stimulus``.

    `stimulus` may be a single state or a 2-D array holding one stimulus
    per column.
    """
    M = memory.M if isinstance(memory, MemoryMatrix) else as_matrix(memory)
    s = np.asarray(stimulus, dtype=np.complex128)
    if s.ndim not in (1, 2) or s.shape[0] != M.shape[1]:
        raise ShapeError(f"stimulus of shape {s.shape} does not fit a memory with m_in={M.shape[1]}")
    return M @ s


@dataclass(frozen=True, eq=False)
class RecallDiagnostics:
    """Split of a recall response into the wanted signal and the crosstalk noise."""

    response: np.ndarray
    signal: np.ndarray
    noise: np.ndarray
    noise_norm: float
    response_cosine: float


def _pair_matrices(pairs):
    X = key_matrix([p[0] for p in pairs])
    Y = key_matrix([p[1] for p in pairs])
    return X, Y


def crosstalk_noise(X, Y):
    """Noise vectors for every stored key at once.

    Column j of the result is ``sum_{k != j} <x_k|x_j> y_k``.
    """
    X = as_matrix(X)
    Y = as_matrix(Y)
    G = X.conj().T @ X
    np.fill_diagonal(G, 0.0)
    return Y @ G


def _abs_cosine(a, b):
    ea = float(np.vdot(a, a).real)
    eb = float(np.vdot(b, b).real)
    if ea <= EPS_ZERO or eb <= EPS_ZERO:
        return 0.0
    return abs(complex(np.vdot(a, b))) / np.sqrt(ea * eb)


def decompose_recall(pairs, j, require_unit_energy=True):
    """Recall stored key `j` and split the response into signal and noise.

    Parameters
    ----------
    pairs : sequence of TrainingPair
    j : int
        0-based index of the stored pair used as stimulus.
    require_unit_energy : bool
        Reject keys whose energy differs from 1 by more than 1e-8.
    """
    pairs = list(pairs)
    q = len(pairs)
    if not 0 <= j < q:
        raise DomainError(f"pair index {j} outside [0, {q})")
    X, Y = _pair_matrices(pairs)
    if require_unit_energy:
        for k in range(q):
            _check_unit_energy(X[:, k], k)
    xj = X[:, j]
    response = recall(train_batch(pairs), xj)
    overlaps = X.conj().T @ xj
    signal = overlaps[j] * Y[:, j]
    overlaps[j] = 0.0
    noise = Y @ overlaps
    return RecallDiagnostics(
        response=response,
        signal=signal,
        noise=noise,
        noise_norm=float(np.linalg.norm(noise)),
        response_cosine=_abs_cosine(response, Y[:, j]),
    )


def crosstalk_matrix(keys):
    """Gram matrix of cosines ``C[k, j] = cos(x_k, x_j)`` (Hermitian, unit diagonal)."""
    X = key_matrix([normalize(x) for x in (keys.T if isinstance(keys, np.ndarray) else keys)])
    return X.conj().T @ X


class Capacity(enum.Enum):
    WITHIN_CAPACITY = "WithinCapacity"
    RANK_DEFICIENT = "RankDeficient"


class CapacityVerdict(NamedTuple):
    status: Capacity
    m: int
    q: int
    keys_rank: int

    @property
    def ok(self):
        return self.status is Capacity.WITHIN_CAPACITY

    def __str__(self):
        return f"{self.status.value} (m={self.m}, q={self.q}, rank={self.keys_rank})"


def capacity_check(m, q, keys_rank):
    """A memory of input dimension `m` stores `q` pairs cleanly only if the
    keys are independent, which in turn needs ``q <= m``."""
    if m < 1 or q < 1:
        raise DomainError("m and q must be positive")
    ok = q <= m and keys_rank == q
    return CapacityVerdict(Capacity.WITHIN_CAPACITY if ok else Capacity.RANK_DEFICIENT, m, q, keys_rank)
