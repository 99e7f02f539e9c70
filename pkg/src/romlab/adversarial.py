"""Systems built so that a projection method produces prescribed (and unstable) reduced models.

Two constructions:

* :func:`prescribed_ritz_system` returns an upper Hessenberg ``A`` with unit
  subdiagonal and ``b = e_1`` whose Arnoldi Ritz values at every stage are
  chosen in advance.
* :func:`greenbaum_system` returns an output vector ``c`` for which
  two-sided Lanczos on ``(A, b, c)`` reproduces a chosen tridiagonal matrix.
"""

import warnings
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from . import _mp
from .bounds import count_unstable
from .errors import DegenerateC, IllConditioned, InputError, RecurrenceBreakdown
from .krylov import arnoldi, bilanczos
from .linalg import TOL, as_matrix, as_vector, general_eigen

__all__ = [
    "RitzPrescription",
    "GreenbaumPrescription",
    "RitzVerification",
    "GreenbaumVerification",
    "prescribed_ritz_system",
    "verify_prescribed_ritz",
    "greenbaum_system",
    "verify_greenbaum",
    "match_multisets",
]

HUGE_ENTRY = 1e15


def _pairs(values):
    return [[float(complex(z).real), float(complex(z).imag)] for z in values]


def _unpairs(items, name):
    out = []
    for z in items:
        if isinstance(z, (list, tuple)):
            if len(z) != 2:
                raise InputError(f"{name}: complex entries must be [re, im] pairs")
            out.append(complex(float(z[0]), float(z[1])))
        else:
            out.append(complex(z))
    return out


@dataclass
class RitzPrescription:
    """Final spectrum of ``A`` (n values) and the Ritz values wanted at stages 1..n-1."""

    final_spectrum: list
    stage_spectra: list

    def __post_init__(self):
        self.final_spectrum = [complex(z) for z in self.final_spectrum]
        self.stage_spectra = [[complex(z) for z in s] for s in self.stage_spectra]
        n = len(self.final_spectrum)
        if n < 2:
            raise InputError("final_spectrum needs at least two values")
        if len(self.stage_spectra) != n - 1:
            raise InputError(f"expected {n - 1} stage spectra, got {len(self.stage_spectra)}")
        for k, s in enumerate(self.stage_spectra, start=1):
            if len(s) != k:
                raise InputError(f"stage {k} must hold {k} values, got {len(s)}")

    @property
    def n(self):
        return len(self.final_spectrum)

    def to_dict(self):
        return {
            "final_spectrum": _pairs(self.final_spectrum),
            "stage_spectra": [_pairs(s) for s in self.stage_spectra],
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            final = _unpairs(doc["final_spectrum"], "final_spectrum")
            stages = [_unpairs(s, f"stage_spectra[{i}]") for i, s in enumerate(doc["stage_spectra"])]
        except KeyError as exc:
            raise InputError(f"prescription: missing field {exc.args[0]!r}") from None
        return cls(final, stages)


@dataclass
class GreenbaumPrescription:
    """Diagonal ``alphas`` (k values) and superdiagonal ``betas`` (k-1 values) of the target tridiagonal."""

    alphas: list
    betas: list

    def __post_init__(self):
        self.alphas = [complex(z) for z in self.alphas]
        self.betas = [complex(z) for z in self.betas]
        if len(self.alphas) < 1:
            raise InputError("alphas: need at least one value")
        if len(self.betas) != len(self.alphas) - 1:
            raise InputError(f"betas: expected {len(self.alphas) - 1} values, got {len(self.betas)}")

    @property
    def k(self):
        return len(self.alphas)

    def to_dict(self):
        return {"alphas": _pairs(self.alphas), "betas": _pairs(self.betas)}

    @classmethod
    def from_dict(cls, doc):
        try:
            return cls(_unpairs(doc["alphas"], "alphas"), _unpairs(doc["betas"], "betas"))
        except KeyError as exc:
            raise InputError(f"prescription: missing field {exc.args[0]!r}") from None


def _monic(roots, dtype):
    """Coefficients of ``prod (x - r)`` in ascending powers."""
    return np.poly(np.asarray(roots, dtype=dtype))[::-1].astype(dtype) if len(roots) else np.ones(1, dtype)


def prescribed_ritz_system(p):
    """Upper Hessenberg ``A`` with unit subdiagonal and ``b = e_1`` realizing a Ritz prescription.

    Column ``k`` follows from writing ``p_k(x) - x p_{k-1}(x)`` in the basis
    ``p_0, ..., p_{k-1}`` of stage characteristic polynomials, using
    ``p_k = (x - h_kk) p_{k-1} - sum_{j<k} h_jk p_{j-1}``.  The last column
    uses the characteristic polynomial of the final spectrum.

    Returns
    -------
    A : ndarray, shape (n, n)
        Real when every prescribed value is real.
    b : ndarray, shape (n,)

    Warns
    -----
    IllConditioned
        When some entry exceeds 1e15 in magnitude.
    """
    n = p.n
    allvals = p.final_spectrum + [z for s in p.stage_spectra for z in s]
    dtype = float if all(z.imag == 0 for z in allvals) else complex
    cast = (lambda s: [z.real for z in s]) if dtype is float else (lambda s: s)
    polys = [np.ones(1, dtype)] + [_monic(cast(s), dtype) for s in p.stage_spectra] + \
            [_monic(cast(p.final_spectrum), dtype)]
    A = np.zeros((n, n), dtype)
    for k in range(1, n + 1):
        r = polys[k].copy()
        r[1:] -= polys[k - 1]
        r = r[:k]
        for i in range(k - 1, -1, -1):
            ci = r[i]
            r[: i + 1] -= ci * polys[i]
            A[i, k - 1] = 0 - ci  # avoids signed zeros
        if k < n:
            A[k, k - 1] = 1
    big = np.abs(A).max()
    if big > HUGE_ENTRY:
        warnings.warn(f"construction entries reach {big:.2e}", IllConditioned, stacklevel=2)
    b = np.zeros(n, dtype)
    b[0] = 1
    return A, b


def match_multisets(x, y):
    """Largest distance under the pairing of ``x`` and ``y`` that minimizes the total distance."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if len(x) != len(y):
        raise InputError(f"multisets differ in size: {len(x)} vs {len(y)}")
    if len(x) == 0:
        return 0.0
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@dataclass
class RitzVerification:
    """Per-stage multiset mismatch between Arnoldi Ritz values and the prescription.

    ``stage_mismatch[k-1]`` covers stage ``k`` for ``k < n``; NaN marks a
    stage never reached because Arnoldi broke down.  ``final_mismatch``
    compares the eigenvalues of ``A`` with the final spectrum.
    """

    stage_mismatch: list
    final_mismatch: float
    breakdown_step: int | None = None

    @property
    def max_stage_mismatch(self):
        return float(np.max(self.stage_mismatch)) if self.stage_mismatch else 0.0

    def as_dict(self):
        return {
            "stage_mismatch": [float(m) for m in self.stage_mismatch],
            "final_mismatch": self.final_mismatch,
            "breakdown_step": self.breakdown_step,
        }


def verify_prescribed_ritz(A, b, p):
    """Run Arnoldi on ``(A, b)`` and compare each stage's Ritz values with the prescription."""
    A = as_matrix(A, "A")
    n = p.n
    fac = arnoldi(A, b, n - 1)
    mism = []
    for k in range(1, n):
        if k > fac.k:
            mism.append(float("nan"))
        else:
            mism.append(match_multisets(fac.ritz_values(k), p.stage_spectra[k - 1]))
    final = match_multisets(general_eigen(A).values, p.final_spectrum)
    return RitzVerification(mism, final, fac.breakdown_step)


def _complement_projection(S, x, use_mp):
    """Component of ``x`` orthogonal to the range of ``S``, via a complete Householder QR."""
    n, m = S.shape
    if use_mp:
        Q, _ = mp.qr(mp.matrix(S.tolist()), mode="full")
        Qc = np.array([[Q[i, j] for j in range(m, n)] for i in range(n)], dtype=object)
        coef = Qc.conj().T @ x
        return Qc @ coef
    Q, _ = sla.qr(S, mode="full")
    Qc = Q[:, m:]
    return Qc @ (Qc.conj().T @ x)


def greenbaum_system(A, b, p, dps=None):
    """Output vector ``c`` making two-sided Lanczos on ``(A, b, c)`` reproduce a prescribed tridiagonal.

    Runs ``v~_{j+1} = A v_j - alpha_j v_j - beta_{j-1} v_{j-1}`` with
    ``gamma_j = ||v~_{j+1}||`` from ``v_1 = b / ||b||``, then takes ``c`` as the
    component of ``A b`` orthogonal to
    ``span{v_2, ..., v_{k+1}, A v_{k+1}, ..., A^{k-1} v_{k+1}}``, scaled so
    that ``c* b = 1``.

    Parameters
    ----------
    A : (n, n) array_like
    b : (n,) array_like
    p : GreenbaumPrescription
        ``k = p.k`` must satisfy ``k <= n / 2``.
    dps : int, optional
        Carry out the recurrence and projection in ``dps`` decimal digits.
        The resulting ``c`` can have entries spanning many orders of
        magnitude, so in that case it is returned as an object array of
        ``mpmath.mpc`` suitable for ``bilanczos(..., dps=dps)``.

    Returns
    -------
    c : ndarray
    gammas : ndarray of float, length k
    V : ndarray, shape (n, k + 1)
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    n = A.shape[0]
    if A.shape != (n, n) or b.shape != (n,):
        raise InputError(f"shape mismatch: A {A.shape}, b {b.shape}")
    k = p.k
    if 2 * k > n:
        raise InputError(f"need k <= n/2, got k={k}, n={n}")
    if not np.any(b):
        raise InputError("b must be nonzero")
    if dps is None:
        return _greenbaum(A, b, p, False)
    with mp.workdps(dps):
        c, gammas, V = _greenbaum(_mp.to_mp(A), _mp.to_mp(b), p, True)
        return c, gammas, V


def _greenbaum(A, b, p, use_mp):
    k = p.k
    alphas = [mp.mpc(a) for a in p.alphas] if use_mp else p.alphas
    betas = [mp.mpc(x) for x in p.betas] if use_mp else p.betas
    scale = _mp.norm(A)
    v = b / _mp.norm(b)
    vs, gammas = [v], []
    for j in range(k):
        vt = A @ v - alphas[j] * v
        if j > 0:
            vt = vt - betas[j - 1] * vs[j - 1]
        g = _mp.norm(vt)
        if g <= TOL.deflate * max(1.0, scale):
            raise RecurrenceBreakdown(f"gamma_{j + 1} vanished")
        gammas.append(g)
        v = vt / g
        vs.append(v)
    cols = vs[1:]
    x = vs[-1]
    for _ in range(k - 1):
        x = A @ x
        cols.append(x)
    S = np.column_stack(cols)
    Ab = A @ b
    c = _complement_projection(S, Ab, use_mp)
    nc = _mp.norm(c)
    if nc <= TOL.deflate * _mp.norm(Ab):
        raise DegenerateC("projected c is numerically zero")
    cv = _mp.vdot(c, vs[0])
    if abs(cv) <= TOL.breakdown * nc:
        raise DegenerateC("c is orthogonal to b")
    c = c / _mp.conj(_mp.vdot(c, b))
    conv = _mp.to_complex if use_mp else np.asarray
    V = np.column_stack([conv(x) for x in vs])
    return c, np.array([float(g) for g in gammas]), V


@dataclass
class GreenbaumVerification:
    """Outcome of two-sided Lanczos on a constructed ``(A, b, c)``.

    ``unstable_counts[j-1]`` is the number of eigenvalues of the leading
    j-by-j block of the computed ``T`` with nonnegative real part.
    """

    completed: bool
    breakdown_step: int | None
    breakdown_kind: str | None
    mismatch: float
    tolerance: float
    T: np.ndarray
    unstable_counts: list = field(default_factory=list)

    @property
    def matches(self):
        return self.completed and self.mismatch <= self.tolerance

    def as_dict(self):
        return {
            "completed": self.completed,
            "breakdown_step": self.breakdown_step,
            "breakdown_kind": self.breakdown_kind,
            "mismatch": self.mismatch,
            "tolerance": self.tolerance,
            "matches": self.matches,
            "unstable_counts": list(self.unstable_counts),
        }


def verify_greenbaum(A, b, c, p, gammas, dps=None, rtol=1e-8):
    """Run two-sided Lanczos and compare ``W* A V`` with the prescribed tridiagonal entrywise.

    A breakdown is reported, not raised.  The tolerance is ``rtol * ||A||_2``.
    """
    A = as_matrix(A, "A")
    k = p.k
    fac = bilanczos(A, b, c, k, dps=dps)
    tol = rtol * float(np.linalg.norm(A, 2))
    completed = fac.completed and fac.k == k
    T = fac.T
    if completed:
        target = np.diag(np.asarray(p.alphas, dtype=complex))
        if k > 1:
            target += np.diag(np.asarray(p.betas, dtype=complex), 1)
            target += np.diag(np.asarray(gammas[: k - 1], dtype=complex), -1)
        mismatch = float(np.abs(T - target).max())
    else:
        mismatch = float("inf")
    counts = [count_unstable(general_eigen(T[:j, :j]).values) for j in range(1, T.shape[0] + 1)]
    return GreenbaumVerification(completed, fac.breakdown_step, fac.breakdown_kind, mismatch, tol, T, counts)
