"""Spectral indicators: abscissas and radii, the numerical range, pseudospectra and transient envelopes."""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .linalg import as_matrix, general_eigen, hermitian_eigen, matrix_exponential, norm2, singular_values

__all__ = [
    "SpectralSummary",
    "PseudospectraGrid",
    "hermitian_part",
    "support_function",
    "numerical_abscissa",
    "numerical_radius",
    "spectral_summary",
    "numerical_range_boundary",
    "in_numerical_range",
    "numerical_range_distance",
    "pseudospectra_grid",
    "pseudo_abscissa_estimate",
    "pseudo_radius_estimate",
    "stone_bound_check",
    "transient_envelope_continuous",
    "transient_envelope_discrete",
    "transient_lower_bound",
]

DEFAULT_EPS_LEVELS = (1e-1, 10**-1.25, 10**-1.5, 10**-1.75, 1e-2, 10**-2.25, 10**-2.5, 10**-2.75,
                      1e-3, 10**-3.25, 10**-3.5, 10**-3.75, 1e-4)


def _square(A):
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise InputError(f"A: must be square, got shape {A.shape}")
    return A


def hermitian_part(A):
    """``(A + A*) / 2``."""
    A = _square(A)
    return 0.5 * (A + A.conj().T)


def _rotated_top(A, theta, vectors=False):
    r = np.exp(1j * theta)
    M = 0.5 * (r * A + np.conj(r) * A.conj().T)
    if vectors:
        w, u = np.linalg.eigh(M)
        return w[-1], u[:, -1]
    return np.linalg.eigvalsh(M)[-1]


def support_function(A, angles=360):
    """``h(theta) = max Re(e^{i theta} z)`` over ``z`` in the numerical range, on a uniform angle grid.

    Returns ``(thetas, h)``; ``h(theta)`` is the top eigenvalue of the
    Hermitian part of ``e^{i theta} A``.
    """
    A = _square(A)
    thetas = 2 * np.pi * np.arange(angles) / angles
    return thetas, np.array([_rotated_top(A, t) for t in thetas])


def numerical_abscissa(A):
    """Rightmost extent of the numerical range: the top eigenvalue of the Hermitian part."""
    return float(hermitian_eigen(hermitian_part(A)).values[0])


def _golden_max(f, lo, hi, tol):
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return max(fc, fd)


def numerical_radius(A, angles=720, tol=1e-8):
    """Largest modulus over the numerical range.

    Sweeps ``max_theta lambda_max(Herm(e^{i theta} A))`` over ``angles``
    points, then refines around the best angle by golden-section search to
    an angular tolerance of ``tol``.
    """
    A = _square(A)
    thetas, h = support_function(A, angles)
    i = int(np.argmax(h))
    step = 2 * np.pi / angles
    refined = _golden_max(lambda t: _rotated_top(A, t), thetas[i] - step, thetas[i] + step, tol)
    return float(max(h[i], refined))


@dataclass
class SpectralSummary:
    alpha: float
    rho: float
    omega: float
    nu: float
    mu: np.ndarray
    s: np.ndarray
    eigenvalues: np.ndarray = field(repr=False, default=None)

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "rho": self.rho,
            "omega": self.omega,
            "nu": self.nu,
            "mu": [float(x) for x in self.mu],
            "s": [float(x) for x in self.s],
        }


def spectral_summary(A):
    """Spectral abscissa and radius, numerical abscissa and radius, Hermitian-part eigenvalues, singular values."""
    A = _square(A)
    lam = general_eigen(A).values
    mu = hermitian_eigen(hermitian_part(A)).values
    return SpectralSummary(
        alpha=float(np.max(lam.real)),
        rho=float(np.max(np.abs(lam))),
        omega=float(mu[0]),
        nu=numerical_radius(A),
        mu=mu,
        s=singular_values(A),
        eigenvalues=lam,
    )


def numerical_range_boundary(A, angles=360):
    """Boundary points ``u* A u`` of the numerical range, in sweep order.

    ``u`` is the top eigenvector of the Hermitian part of ``e^{i theta} A``
    for ``theta`` uniform in ``[0, 2 pi)``.  The convex hull of the points is
    an inner approximation of the numerical range.
    """
    A = _square(A)
    if angles < 3:
        raise InputError("angles must be at least 3")
    pts = []
    for t in 2 * np.pi * np.arange(angles) / angles:
        _, u = _rotated_top(A, t, vectors=True)
        pts.append(np.vdot(u, A @ u))
    return np.array(pts)


def numerical_range_distance(A, z, angles=360, support=None):
    """Supporting-hyperplane estimate of the distance from ``z`` to the numerical range.

    Returns ``max(0, max_theta Re(e^{i theta} z) - h(theta))`` over the
    sampled angles, which never exceeds the true distance.
    """
    thetas, h = support if support is not None else support_function(A, angles)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    gaps = (np.exp(1j * thetas)[np.newaxis, :] * z[:, np.newaxis]).real - h[np.newaxis, :]
    return np.maximum(gaps.max(axis=1), 0.0)


def in_numerical_range(A, z, tol=1e-8, angles=360, support=None):
    """Whether ``z`` satisfies every sampled supporting-half-plane inequality of the numerical range.

    ``z`` may be a scalar (returns bool) or an array (returns a bool array).
    Pass ``support=support_function(A, angles)`` to reuse the sweep.
    """
    scalar = np.ndim(z) == 0
    ok = numerical_range_distance(A, z, angles, support) <= tol
    return bool(ok[0]) if scalar else ok


@dataclass
class PseudospectraGrid:
    """Smallest singular value of ``z I - A`` on a rectangular grid.

    ``values[i, j]`` belongs to ``z = real_axis[j] + 1j * imag_axis[i]``.
    """

    real_axis: np.ndarray
    imag_axis: np.ndarray
    values: np.ndarray
    eps_levels: tuple = DEFAULT_EPS_LEVELS

    @property
    def points(self):
        return self.real_axis[np.newaxis, :] + 1j * self.imag_axis[:, np.newaxis]

    @property
    def spacing(self):
        dx = np.diff(self.real_axis).max() if len(self.real_axis) > 1 else 0.0
        dy = np.diff(self.imag_axis).max() if len(self.imag_axis) > 1 else 0.0
        return float(max(dx, dy))

    def to_csv(self, fh):
        """Header row holds the real axis, first column the imaginary axis, 17 significant digits."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["im\\re"] + [f"{x:.17g}" for x in self.real_axis])
        for y, row in zip(self.imag_axis, self.values):
            w.writerow([f"{y:.17g}"] + [f"{v:.17g}" for v in row])

    @classmethod
    def from_csv(cls, fh, eps_levels=DEFAULT_EPS_LEVELS):
        rows = list(csv.reader(fh))
        real = np.array([float(x) for x in rows[0][1:]])
        imag = np.array([float(r[0]) for r in rows[1:]])
        vals = np.array([[float(x) for x in r[1:]] for r in rows[1:]])
        return cls(real, imag, vals, tuple(eps_levels))


def _default_box(A, eps_levels):
    _, h = support_function(A, 4)
    # thetas 0, pi/2, pi, 3pi/2
    re_lo, re_hi = -h[2], h[0]
    im_lo, im_hi = -h[1], h[3]
    margin = max(eps_levels) if len(eps_levels) else 0.0
    wr, wi = re_hi - re_lo, im_hi - im_lo
    width = max(wr, wi, 1e-8 * max(1.0, abs(re_hi), abs(im_hi)))
    hr = 0.6 * (wr if wr > 0 else width) + margin
    hi = 0.6 * (wi if wi > 0 else width) + margin
    cr, ci = 0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)
    return (cr - hr, cr + hr), (ci - hi, ci + hi)


def pseudospectra_grid(A, re_range=None, im_range=None, resolution=101, eps_levels=DEFAULT_EPS_LEVELS,
                       workers=None):
    """Dense ``sigma_min(z I - A)`` sweep.

    Parameters
    ----------
    A : (n, n) array_like
    re_range, im_range : (float, float), optional
        Default: a box 1.2 times the extent of the numerical range, widened by
        the largest requested epsilon.
    resolution : int or (int, int)
        Points per axis (real, imaginary); at least 2 each.
    eps_levels : sequence of float
        Contour levels carried along for reporting.
    workers : int, optional
        Evaluate grid rows on this many threads.  Every point is computed
        independently, so the result does not depend on ``workers``.
    """
    A = _square(A)
    eps_levels = tuple(float(e) for e in eps_levels)
    nr, ni = (resolution, resolution) if np.ndim(resolution) == 0 else resolution
    if nr < 2 or ni < 2:
        raise InputError("resolution must be at least 2 per axis")
    if re_range is None or im_range is None:
        dre, dim = _default_box(A, eps_levels)
        re_range = dre if re_range is None else re_range
        im_range = dim if im_range is None else im_range
    real = np.linspace(re_range[0], re_range[1], int(nr))
    imag = np.linspace(im_range[0], im_range[1], int(ni))
    n = A.shape[0]
    eye = np.eye(n)

    def row(y):
        z = real + 1j * y
        stack = z[:, np.newaxis, np.newaxis] * eye - A[np.newaxis]
        return np.linalg.svd(stack, compute_uv=False)[:, -1]

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.array(list(pool.map(row, imag)))
    else:
        values = np.array([row(y) for y in imag])
    return PseudospectraGrid(real, imag, values, eps_levels)


def pseudo_abscissa_estimate(grid, eps):
    """Largest real part among grid points with ``sigma_min < eps``; ``-inf`` if there are none.

    This is a lower estimate of the true pseudospectral abscissa, accurate
    to the grid spacing.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    mask = grid.values < eps
    if not mask.any():
        return -math.inf
    return float(grid.points.real[mask].max())


def pseudo_radius_estimate(grid, eps):
    """Largest modulus among grid points with ``sigma_min < eps``; ``-inf`` if there are none."""
    if eps <= 0:
        raise InputError("eps must be positive")
    mask = grid.values < eps
    if not mask.any():
        return -math.inf
    return float(np.abs(grid.points[mask]).max())


def stone_bound_check(A, grid, eps, angles=360):
    """Check that every grid point inside the eps-pseudospectrum is within ``eps + spacing`` of the numerical range."""
    A = _square(A)
    mask = grid.values < eps
    if not mask.any():
        return True
    dist = numerical_range_distance(A, grid.points[mask], angles)
    return bool(np.all(dist < eps + grid.spacing))


def transient_envelope_continuous(A, times):
    """``||exp(t A)||_2`` at each time."""
    A = _square(A)
    times = np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise InputError("times must be nonnegative and ascending")
    return np.array([1.0 if t == 0 else norm2(matrix_exponential(t * A)) for t in times])


def transient_envelope_discrete(A, steps):
    """``||A^j||_2`` for ``j = 0, ..., steps``."""
    A = _square(A)
    if steps < 0:
        raise InputError("steps must be nonnegative")
    out = [1.0]
    P = np.eye(A.shape[0], dtype=A.dtype)
    for _ in range(steps):
        P = A @ P
        if not np.all(np.isfinite(P)):
            from .errors import MatrixOverflow

            raise MatrixOverflow("matrix powers overflowed")
        out.append(norm2(P))
    return np.array(out)


def transient_lower_bound(A, eps, alpha_eps):
    """``alpha_eps / eps``, a lower bound on ``sup_t ||exp(t A)||`` when ``alpha_eps`` is the eps-pseudospectral abscissa.

    ``A`` is accepted for interface symmetry; the bound depends only on the
    two scalars.  A nonpositive ``alpha_eps`` gives a vacuous bound.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    return float(alpha_eps) / float(eps)
