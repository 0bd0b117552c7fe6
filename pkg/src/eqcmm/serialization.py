"""JSON forms of states, matrices, factors, memories and models.

Complex numbers are ``[re, im]`` pairs; Python's float repr round-trips every
double exactly, so load(dump(x)) reproduces arrays bit for bit.
"""
import json
import math

import numpy as np

from .eqcmm import EqcmmModel
from .errors import DomainError, ShapeError
from .qcmm import MemoryMatrix, TrainingPair
from .qop import GSFactors, GSMode


def _pairs_of(values):
    return [[float(z.real), float(z.imag)] for z in values]


def _complex_list(pairs, n, what):
    if not isinstance(pairs, list) or len(pairs) != n:
        raise ShapeError(f"{what}: expected {n} [re, im] pairs")
    out = np.empty(n, dtype=np.complex128)
    for i, p in enumerate(pairs):
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            raise ShapeError(f"{what}: entry {i} is not a [re, im] pair")
        re, im = float(p[0]), float(p[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise DomainError(f"{what}: entry {i} is not finite")
        out[i] = complex(re, im)
    return out


def state_to_dict(v):
    v = np.asarray(v, dtype=np.complex128)
    return {"dim": int(v.shape[0]), "amplitudes": _pairs_of(v)}


def state_from_dict(d):
    try:
        dim = int(d["dim"])
        amps = d["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"not a state object: {exc}") from None
    if dim < 1:
        raise ShapeError("state dim must be >= 1")
    return _complex_list(amps, dim, "state")


def matrix_to_dict(a):
    a = np.asarray(a, dtype=np.complex128)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": _pairs_of(a.ravel())}


def matrix_from_dict(d):
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        entries = d["entries"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"not a matrix object: {exc}") from None
    return _complex_list(entries, rows * cols, "matrix").reshape(rows, cols)


def factors_to_dict(f):
    return {
        "rank": f.rank,
        "dropped": list(f.dropped),
        "tol": f.tol,
        "mode": f.mode.value,
        "Z": matrix_to_dict(f.Z),
        "R": matrix_to_dict(f.R),
    }


def factors_from_dict(d):
    Z = matrix_from_dict(d["Z"])
    R = matrix_from_dict(d["R"])
    rank = int(d["rank"])
    if Z.shape[1] != rank or R.shape[0] != rank or Z.shape[1] > Z.shape[0]:
        raise ShapeError("factor shapes disagree with rank")
    return GSFactors(Z=Z, R=R, rank=rank, dropped=tuple(int(k) for k in d["dropped"]),
                     tol=float(d["tol"]), mode=GSMode(d.get("mode", "modified")))


def memory_to_dict(mem):
    return {"m_out": mem.m_out, "m_in": mem.m_in, "pairs_trained": mem.pairs_trained,
            "M": matrix_to_dict(mem.M)}


def memory_from_dict(d):
    M = matrix_from_dict(d["M"])
    if M.shape != (int(d["m_out"]), int(d["m_in"])):
        raise ShapeError("memory dimensions disagree with its matrix")
    return MemoryMatrix(M, int(d["pairs_trained"]))


def model_to_dict(model):
    return {
        "factors": factors_to_dict(model.factors),
        "Y": matrix_to_dict(model.Y),
        "memory_z": memory_to_dict(model.memory_z),
        "key_index": list(model.key_index),
    }


def model_from_dict(d):
    factors = factors_from_dict(d["factors"])
    Y = matrix_from_dict(d["Y"])
    key_index = tuple(None if k is None else int(k) for k in d["key_index"])
    if len(key_index) != Y.shape[1] or factors.R.shape[1] != Y.shape[1]:
        raise ShapeError("model pair count is inconsistent")
    return EqcmmModel(factors=factors, Y=Y, memory_z=memory_from_dict(d["memory_z"]), key_index=key_index)


def pairs_to_list(pairs):
    return [{"key": state_to_dict(x), "memorized": state_to_dict(y)} for x, y in pairs]


def pairs_from_list(items):
    if not isinstance(items, list):
        raise ShapeError("a training set is a JSON array of pair objects")
    try:
        return [TrainingPair(state_from_dict(it["key"]), state_from_dict(it["memorized"])) for it in items]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"not a training pair: {exc}") from None


def ensemble_to_dict(states, spec, seed):
    return {"spec": spec.to_dict(), "seed": int(seed), "states": [state_to_dict(s) for s in states]}


def states_from_json(d):
    """States from an ensemble dump, a bare array of states, or a training set (its keys)."""
    if isinstance(d, dict) and "states" in d:
        d = d["states"]
    if isinstance(d, dict) and "amplitudes" in d:
        return [state_from_dict(d)]
    if isinstance(d, list) and d and isinstance(d[0], dict) and "key" in d[0]:
        return [p.key for p in pairs_from_list(d)]
    if not isinstance(d, list) or not d:
        raise ShapeError("expected a non-empty list of states")
    return [state_from_dict(s) for s in d]


def dump(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
