import numpy as np
import pytest

from eqcmm import DomainError, EnsembleKind, EnsembleSpec, Seed, coherence, energy, generate
from eqcmm.ensembles import haar_state

from conftest import orthonormal_keys

SQ = 1 / np.sqrt(2)


def test_bipolar_amplitudes():
    for v in generate(EnsembleSpec("bipolar", 4, 50), 7):
        assert set(np.round(v.real, 15)) <= {0.5, -0.5}
        assert not v.imag.any()
        assert energy(v) == pytest.approx(1, abs=1e-15)


def test_haar_first_coordinate_moment():
    # E|v_0|^2 = 1/m; |v_0|^2 ~ Beta(1, m-1), variance (m-1)/(m^2 (m+1))
    m, q = 16, 1000
    p = np.array([abs(v[0]) ** 2 for v in generate(EnsembleSpec("haar", m, q), 11)])
    se = np.sqrt((m - 1) / (m * m * (m + 1)) / q)
    assert abs(p.mean() - 1 / m) <= 3 * se


def test_bloch_uniform_on_sphere():
    # cos(theta) = |a|^2 - |b|^2 is uniform on [-1, 1]: mean 0, variance 1/3
    states = generate(EnsembleSpec("bloch", 2, 1000), 3)
    z = np.array([abs(s[0]) ** 2 - abs(s[1]) ** 2 for s in states])
    assert abs(z.mean()) <= 3 * np.sqrt(1 / 3 / 1000)


def test_perturbed_zero_eps_is_base():
    states = generate(EnsembleSpec("perturbed", 5, 4, noise_eps=0.0), 9)
    base = states[0]
    for s in states[1:]:
        assert s.tobytes() == base.tobytes()
    assert abs(energy(base) - 1) <= 1e-12


def test_perturbed_coherence_grows_as_eps_shrinks():
    wide = coherence(generate(EnsembleSpec("perturbed", 8, 6, noise_eps=1.0), 1))
    tight = coherence(generate(EnsembleSpec("perturbed", 8, 6, noise_eps=1e-3), 1))
    assert tight > wide
    assert tight > 0.99


@pytest.mark.parametrize("kind, dim", [("haar", 9), ("bloch", 2), ("bipolar", 6), ("perturbed", 5)])
def test_normalized_and_deterministic(kind, dim):
    spec = EnsembleSpec(kind, dim, 30, noise_eps=0.1)
    a = generate(spec, 123)
    b = generate(spec, Seed(123))
    for u, v in zip(a, b):
        assert u.tobytes() == v.tobytes()
        assert abs(energy(u) - 1) <= 1e-12


def test_prefix_stability_and_stream_separation():
    short = generate(EnsembleSpec("haar", 6, 5), 42)
    long = generate(EnsembleSpec("haar", 6, 6), 42)
    for u, v in zip(short, long):
        assert u.tobytes() == v.tobytes()
    other = generate(EnsembleSpec("haar", 6, 5), 42, stream="memorized")
    assert not np.allclose(short[0], other[0])
    assert not np.allclose(short[0], generate(EnsembleSpec("haar", 6, 5), 43)[0])


def test_independent_per_index_generation():
    seed = Seed(2**63 + 5)
    full = generate(EnsembleSpec("haar", 4, 8), seed)
    for i in reversed(range(8)):
        v = haar_state(seed.rng("keys/haar", i), 4)
        assert v.tobytes() == full[i].tobytes()


@pytest.mark.parametrize("kwargs", [
    dict(kind="haar", dim=0, count=1),
    dict(kind="haar", dim=3, count=0),
    dict(kind="bloch", dim=3, count=1),
    dict(kind="perturbed", dim=3, count=1, noise_eps=-1),
])
def test_invalid_specs(kwargs):
    with pytest.raises(DomainError):
        EnsembleSpec(**kwargs)


def test_bad_seed():
    with pytest.raises(DomainError):
        Seed(-1)
    with pytest.raises(DomainError):
        Seed(2**64)


def test_coherence_examples(rng):
    assert coherence(list(orthonormal_keys(rng, 5, 5).T)) <= 1e-12
    assert coherence([[1, 0], [SQ, SQ]]) == pytest.approx(SQ)
    v = generate(EnsembleSpec("haar", 3, 1), 0)[0]
    assert coherence([v, v]) == pytest.approx(1, abs=1e-15)
    with pytest.raises(DomainError):
        coherence([v])


def test_kind_enum_roundtrip():
    assert EnsembleSpec(EnsembleKind.BIPOLAR, 2, 1).to_dict()["kind"] == "bipolar"
