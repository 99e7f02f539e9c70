import numpy as np
import pytest

from romlab.gallery import geometric_superdiag, toeplitz_tridiag


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def toeplitz8():
    """tridiag(1/2, -2, 2) of order 8."""
    return toeplitz_tridiag(8, 0.5, -2.0, 2.0)


@pytest.fixture(scope="session")
def geometric128():
    return geometric_superdiag(128, 0.75)


def random_orthonormal(rng, n, k, complex_=True):
    X = rng.standard_normal((n, k))
    if complex_:
        X = X + 1j * rng.standard_normal((n, k))
    Q, _ = np.linalg.qr(X)
    return Q


def nonnormal(rng, n, complex_=True):
    A = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if complex_ else 0)
    return A + 3 * np.triu(rng.standard_normal((n, n)), 1)
