"""Built-in test matrices and demonstration systems."""

import numpy as np

from .adversarial import GreenbaumPrescription, RitzPrescription, prescribed_ritz_system
from .errors import InputError, UnknownExample
from .systems import LTISystem

__all__ = [
    "toeplitz_tridiag",
    "geometric_superdiag",
    "dm12_prescription",
    "dm12_demo",
    "greenbaum_demo",
    "EXAMPLES",
    "make_example",
]


def toeplitz_tridiag(n, sub, diag, sup):
    """Tridiagonal Toeplitz matrix with constant sub-, main and superdiagonal."""
    if n < 1:
        raise InputError("n must be positive")
    return np.diag(np.full(n, float(diag))) + np.diag(np.full(n - 1, float(sub)), -1) \
        + np.diag(np.full(n - 1, float(sup)), 1)


def geometric_superdiag(n, gamma=0.75, sub=0.125, diag=0.5):
    """Tridiagonal matrix with superdiagonal ``gamma, gamma^2, ..., gamma^(n-1)``."""
    if n < 1:
        raise InputError("n must be positive")
    A = np.diag(np.full(n, float(diag))) + np.diag(np.full(n - 1, float(sub)), -1)
    return A + np.diag(float(gamma) ** np.arange(1, n), 1)


def dm12_prescription(n=8):
    """Final spectrum ``-1, ..., -n`` with stage-k Ritz values ``1, ..., k``."""
    return RitzPrescription([-float(j) for j in range(1, n + 1)],
                            [[float(j) for j in range(1, k + 1)] for k in range(1, n)])


def dm12_demo(n=8):
    """Stable system whose Arnoldi ROMs from ``b = e_1`` are unstable at every order below ``n``."""
    A, b = prescribed_ritz_system(dm12_prescription(n))
    return LTISystem.siso(A, b, b)


def greenbaum_demo(n=16, k=8):
    """Symmetric negative definite ``tridiag(1, -2, 1)`` with ``b = e_1`` and the prescription alpha = 2, beta = 1."""
    A = toeplitz_tridiag(n, 1.0, -2.0, 1.0)
    b = np.zeros(n)
    b[0] = 1.0
    return LTISystem.siso(A, b, b), GreenbaumPrescription([2.0] * k, [1.0] * (k - 1))


EXAMPLES = ("toeplitz-tridiag", "geometric-superdiag", "dm12-demo", "greenbaum-demo")


def make_example(name, n=None, sub=0.5, diag=-2.0, sup=2.0, gamma=0.75):
    """Return ``(system, prescription_or_None)`` for a named example.

    Defaults: ``toeplitz-tridiag`` with n = 8, ``geometric-superdiag`` with
    n = 128, ``dm12-demo`` with n = 8 and ``greenbaum-demo`` with n = 16.
    The two matrix families use ``b = c`` equal to the normalized ones vector.
    """
    if name == "toeplitz-tridiag":
        A = toeplitz_tridiag(n or 8, sub, diag, sup)
    elif name == "geometric-superdiag":
        A = geometric_superdiag(n or 128, gamma)
    elif name == "dm12-demo":
        n = n or 8
        return dm12_demo(n), dm12_prescription(n)
    elif name == "greenbaum-demo":
        n = n or 16
        return greenbaum_demo(n, min(8, n // 2))
    else:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    b = np.ones(A.shape[0]) / np.sqrt(A.shape[0])
    return LTISystem.siso(A, b, b), None
