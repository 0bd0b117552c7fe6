"""Seeded key/memorized pattern families.

Every vector is drawn from its own Philox stream keyed by
``(master seed, stream label, kind, index)``, so vector ``i`` never depends
on how many vectors are requested or in which order they are built.
"""
import enum
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import bloch_to_state, key_matrix

_UINT64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    master: int

    def __post_init__(self):
        if not 0 <= int(self.master) <= _UINT64:
            raise DomainError(f"seed {self.master!r} is not a 64-bit unsigned integer")

    def rng(self, label, index):
        """Independent generator for ``(label, index)``."""
        words = [int(self.master) & 0xFFFFFFFF, int(self.master) >> 32,
                 zlib.crc32(label.encode("utf-8")), int(index)]
        return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


def as_seed(seed):
    return seed if isinstance(seed, Seed) else Seed(int(seed))


class EnsembleKind(enum.Enum):
    HAAR = "haar"
    BLOCH = "bloch"
    BIPOLAR = "bipolar"
    PERTURBED = "perturbed"


@dataclass(frozen=True)
class EnsembleSpec:
    kind: EnsembleKind
    dim: int
    count: int
    noise_eps: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if self.dim < 1 or self.count < 1:
            raise DomainError(f"dim and count must be positive (dim={self.dim}, count={self.count})")
        if self.kind is EnsembleKind.BLOCH and self.dim != 2:
            raise DomainError("Bloch-sphere qubits have dim 2")
        if not self.noise_eps >= 0:
            raise DomainError(f"noise_eps must be >= 0, got {self.noise_eps!r}")

    def to_dict(self):
        return {"kind": self.kind.value, "dim": self.dim, "count": self.count, "noise_eps": self.noise_eps}


def haar_state(rng, m):
    """Uniformly distributed unit vector in C^m (normalized complex Gaussian)."""
    v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return v / np.linalg.norm(v)


def _bloch(rng):
    u, v = rng.random(2)
    theta = np.arccos(1.0 - 2.0 * u)
    return bloch_to_state(theta, 2.0 * np.pi * v)


def _bipolar(rng, m):
    signs = rng.integers(0, 2, size=m) * 2 - 1
    return signs.astype(np.complex128) / np.sqrt(m)


def perturb(base, eps, rng):
    """``normalize(base + eps * n)`` for a Haar direction n; `base` itself when eps == 0."""
    base = np.asarray(base, dtype=np.complex128)
    if eps == 0:
        return base.copy()
    v = base + eps * haar_state(rng, base.shape[0])
    return v / np.linalg.norm(v)


def generate(spec, seed, stream="keys"):
    """Draw ``spec.count`` unit-energy states.

    Parameters
    ----------
    spec : EnsembleSpec
    seed : Seed or int
    stream : str
        Label separating families drawn from the same seed (keys, memorized
        vectors, stimulus noise, ...).

    Returns
    -------
    list of ndarray
    """
    seed = as_seed(seed)
    label = f"{stream}/{spec.kind.value}"
    m = spec.dim
    if spec.kind is EnsembleKind.PERTURBED:
        base = haar_state(seed.rng(label + "/base", 0), m)
        return [perturb(base, spec.noise_eps, seed.rng(label, i)) for i in range(spec.count)]
    draw = {
        EnsembleKind.HAAR: lambda rng: haar_state(rng, m),
        EnsembleKind.BLOCH: _bloch,
        EnsembleKind.BIPOLAR: lambda rng: _bipolar(rng, m),
    }[spec.kind]
    return [draw(seed.rng(label, i)) for i in range(spec.count)]


def coherence(keys):
    """Largest ``|<x_k|x_j>|`` over distinct pairs of keys."""
    X = key_matrix(keys)
    if X.shape[1] < 2:
        raise DomainError("coherence needs at least two keys")
    G = np.abs(X.conj().T @ X)
    np.fill_diagonal(G, 0.0)
    return float(G.max())
