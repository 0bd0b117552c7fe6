import numpy as np
import pytest


def haar_matrix(rng, m, q):
    """q Haar-random unit keys as the columns of an m x q array."""
    X = rng.standard_normal((m, q)) + 1j * rng.standard_normal((m, q))
    return X / np.linalg.norm(X, axis=0)


def orthonormal_keys(rng, m, q):
    Q, R = np.linalg.qr(haar_matrix(rng, m, m))
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    return Q[:, :q]


def conditioned_keys(rng, m, q, cond):
    """Unit-column m x q key matrix whose singular values span [1/cond, 1] before column scaling."""
    U = orthonormal_keys(rng, m, q)
    V = orthonormal_keys(rng, q, q)
    s = np.logspace(0, -np.log10(cond), q)
    X = (U * s) @ V.conj().T
    return X / np.linalg.norm(X, axis=0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
