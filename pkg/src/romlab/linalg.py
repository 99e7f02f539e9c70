"""Dense linear algebra kernels shared by every other module.

Matrices are plain :class:`numpy.ndarray` objects.  :func:`as_matrix` is the
single entry point that validates shape and finiteness; real input stays
``float64`` so that real systems produce exactly conjugate-paired spectra,
everything else is promoted to ``complex128``.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import InputError, MatrixOverflow, NoConvergence, NotHermitian, Singular

__all__ = [
    "Tolerances",
    "TOL",
    "EigenDecomposition",
    "as_matrix",
    "as_vector",
    "canonical_order",
    "hermitian_eigen",
    "general_eigen",
    "singular_values",
    "norm2",
    "matrix_exponential",
    "orthonormalize",
    "solve_linear",
    "LUSolver",
]


@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by the package, in one place.

    Values are relative to the Frobenius norm of the matrix involved
    unless the consuming function says otherwise.
    """

    eig: float = 1e-10
    orth: float = 1e-12
    herm: float = 1e-12
    deflate: float = 1e-12
    solve: float = 1e-10
    singular: float = 1e-14
    biorth: float = 1e-8
    breakdown: float = 1e-12
    immediate: float = 1e-14
    near_breakdown: float = 1e-8
    arnoldi: float = 1e-10


TOL = Tolerances()


def _promote(a):
    a = np.asarray(a)
    if a.dtype == object:
        raise InputError("object arrays are not accepted here")
    if np.iscomplexobj(a):
        return a.astype(np.complex128)
    return a.astype(np.float64)


def as_matrix(a, name="matrix"):
    """Validate ``a`` as a finite 2-D array with at least one row and column.

    Scalars become 1x1 matrices and 1-D input becomes a column.
    """
    try:
        m = _promote(a)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not numeric ({exc})") from None
    if m.ndim == 0:
        m = m.reshape(1, 1)
    elif m.ndim == 1:
        m = m.reshape(-1, 1)
    elif m.ndim != 2:
        raise InputError(f"{name}: expected a 2-D array, got {m.ndim}-D")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise InputError(f"{name}: empty matrix of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(f"{name}: contains NaN or Inf")
    return m


def as_vector(x, name="vector"):
    try:
        v = _promote(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not numeric ({exc})") from None
    if v.ndim == 2 and 1 in v.shape:
        v = v.ravel()
    if v.ndim != 1 or v.size == 0:
        raise InputError(f"{name}: expected a nonempty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name}: contains NaN or Inf")
    return v


def _square(a, name):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"{name}: must be square, got shape {m.shape}")
    return m


@dataclass
class EigenDecomposition:
    """Eigenvalues in canonical order, optionally with unit eigenvectors.

    ``residual`` is ``max_j ||A v_j - lambda_j v_j||`` and is NaN when the
    vectors were not requested.
    """

    values: np.ndarray
    vectors: np.ndarray | None = None
    residual: float = float("nan")


def canonical_order(values):
    """Indices sorting ``values`` by descending real part, then descending imaginary part."""
    values = np.asarray(values, dtype=complex)
    return np.lexsort((-values.imag, -values.real))


def _residual(a, values, vectors):
    if vectors.size == 0:
        return 0.0
    r = a @ vectors - vectors * values[np.newaxis, :]
    return float(np.max(np.linalg.norm(r, axis=0)))


def hermitian_eigen(m, want_vectors=False):
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.

    Raises :class:`NotHermitian` if ``||M - M*||_F > tol_herm ||M||_F``.
    """
    m = _square(m, "M")
    scale = np.linalg.norm(m)
    if np.linalg.norm(m - m.conj().T) > TOL.herm * max(scale, np.finfo(float).tiny):
        raise NotHermitian("matrix is not Hermitian to tolerance")
    h = 0.5 * (m + m.conj().T)
    try:
        if want_vectors:
            w, u = np.linalg.eigh(h)
        else:
            w = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(w)[::-1]
    w = w[order]
    if not want_vectors:
        return EigenDecomposition(w)
    u = u[:, order]
    return EigenDecomposition(w, u, _residual(h, w, u))


def general_eigen(a, want_vectors=False):
    """All eigenvalues of a square matrix, in canonical order.

    Real input goes through the real Schur path, so complex eigenvalues come
    out in exactly conjugate pairs.
    """
    a = _square(a, "A")
    try:
        if want_vectors:
            w, v = sla.eig(a)
        else:
            w = sla.eigvals(a)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(str(exc)) from exc
    order = canonical_order(w)
    w = np.asarray(w, dtype=complex)[order]
    if not want_vectors:
        return EigenDecomposition(w)
    v = np.asarray(v, dtype=complex)[:, order]
    v = v / np.linalg.norm(v, axis=0)
    return EigenDecomposition(w, v, _residual(a, w, v))


def singular_values(a):
    """Singular values in descending order; ``min(rows, cols)`` of them."""
    a = as_matrix(a, "A")
    try:
        return sla.svdvals(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def norm2(a):
    """Operator 2-norm (largest singular value)."""
    return float(singular_values(a)[0])


def matrix_exponential(a):
    """``exp(A)`` by scaling and squaring with a diagonal Pade approximant."""
    a = _square(a, "A")
    if not np.any(a):
        return np.eye(a.shape[0], dtype=a.dtype)
    with np.errstate(over="ignore", invalid="ignore"):
        e = sla.expm(a)
    if not np.all(np.isfinite(e)):
        raise MatrixOverflow("matrix exponential overflowed")
    return e


def _gs_step(q, x):
    """Orthogonalize ``x`` against the columns of ``q`` twice; return (residual, coefficients)."""
    if q.shape[1] == 0:
        return x, np.zeros(0, dtype=x.dtype)
    h = q.conj().T @ x
    x = x - q @ h
    h2 = q.conj().T @ x
    x = x - q @ h2
    return x, h + h2


def orthonormalize(columns, drop_tol=None):
    """Orthonormal basis for the range of ``columns`` by Gram-Schmidt with one reorthogonalization.

    A column whose residual after orthogonalization has norm below
    ``drop_tol * ||columns||_F`` is treated as dependent and dropped.

    Returns
    -------
    Q : ndarray, shape (n, rank)
    rank : int
    """
    x = as_matrix(columns, "columns")
    drop_tol = TOL.deflate if drop_tol is None else drop_tol
    ref = np.linalg.norm(x)
    dtype = np.result_type(x.dtype, np.float64)
    q = np.zeros((x.shape[0], 0), dtype=dtype)
    if ref == 0:
        return q, 0
    for j in range(x.shape[1]):
        r, _ = _gs_step(q, x[:, j])
        nr = np.linalg.norm(r)
        if nr <= drop_tol * ref:
            continue
        q = np.column_stack([q, r / nr])
    return q, q.shape[1]


class LUSolver:
    """Pivoted LU factorization of a square matrix, reused across right-hand sides.

    Raises :class:`Singular` when the smallest pivot is below
    ``tol_singular * ||A||_F``.
    """

    def __init__(self, a):
        a = _square(a, "A")
        self.shape = a.shape
        self.scale = float(np.linalg.norm(a))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            self._lu, self._piv = sla.lu_factor(a, check_finite=False)
        pivots = np.abs(np.diag(self._lu))
        if self.scale == 0 or pivots.min() <= TOL.singular * self.scale:
            raise Singular(f"matrix is numerically singular (min pivot {pivots.min():.3e})")

    def solve(self, b, adjoint=False):
        b = np.asarray(b)
        trans = 2 if adjoint else 0
        return sla.lu_solve((self._lu, self._piv), b, trans=trans, check_finite=False)


def solve_linear(a, b):
    """Solve ``A X = B`` with partial pivoting."""
    solver = LUSolver(a)
    b = np.asarray(b)
    if b.shape[0] != solver.shape[0]:
        raise InputError(f"B has {b.shape[0]} rows, A has {solver.shape[0]}")
    return solver.solve(b)
