"""Strip and disk bounds on the Ritz values of orthogonal projections, and unstable-mode caps."""

from dataclasses import dataclass

import numpy as np

from .diagnostics import hermitian_part
from .errors import IndexOutOfRange, InputError, WrongProjectionKind
from .linalg import as_matrix, canonical_order, hermitian_eigen, singular_values

__all__ = [
    "StripBounds",
    "DiskBounds",
    "RomCheckReport",
    "strip_bounds",
    "strip_interval",
    "disk_bounds",
    "check_rom_strips",
    "check_rom_disks",
    "unstable_subspace",
    "count_unstable",
]

SLACK = 1e-8


def _square(A):
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise InputError(f"A: must be square, got shape {A.shape}")
    return A


def count_unstable(eigenvalues, domain="continuous"):
    """Number of eigenvalues with ``Re >= 0`` (continuous) or ``|.| >= 1`` (discrete)."""
    lam = np.asarray(eigenvalues, dtype=complex)
    if domain == "continuous":
        return int(np.count_nonzero(lam.real >= 0))
    if domain == "discrete":
        return int(np.count_nonzero(np.abs(lam) >= 1))
    raise InputError(f"unknown domain {domain!r}")


@dataclass
class StripBounds:
    """Prefix means of the Hermitian-part eigenvalues.

    ``M[j-1]`` is the mean of the ``j`` largest and ``Mneg[j-1]`` the mean of
    the ``j`` smallest.  ``p_cap`` is the largest ``j`` with ``M_j >= 0``.
    """

    M: np.ndarray
    Mneg: np.ndarray
    p_cap: int
    mu: np.ndarray

    @property
    def n(self):
        return len(self.M)


def strip_bounds(A):
    A = _square(A)
    mu = hermitian_eigen(hermitian_part(A)).values
    j = np.arange(1, len(mu) + 1)
    M = np.cumsum(mu) / j
    Mneg = np.cumsum(mu[::-1]) / j
    p_cap = int(np.count_nonzero(M >= 0))
    return StripBounds(M, Mneg, p_cap, mu)


def strip_interval(bounds, k, j):
    """``(M_{-(k-j+1)}, M_j)``, the vertical strip holding ``Re theta_j`` for any k-dimensional orthogonal ROM."""
    if not (1 <= j <= k <= bounds.n):
        raise IndexOutOfRange(f"need 1 <= j <= k <= {bounds.n}, got j={j}, k={k}")
    return float(bounds.Mneg[k - j]), float(bounds.M[j - 1])


@dataclass
class DiskBounds:
    """``G[j-1]`` is the geometric mean of the ``j`` largest singular values."""

    G: np.ndarray
    p_cap: int
    s: np.ndarray


def disk_bounds(A):
    A = _square(A)
    s = singular_values(A)
    with np.errstate(divide="ignore"):
        logs = np.log(s)
    G = np.exp(np.cumsum(logs) / np.arange(1, len(s) + 1))
    # G is nonincreasing, so the cap is a prefix count
    return DiskBounds(G, int(np.count_nonzero(G >= 1)), s)


@dataclass
class RomCheckReport:
    """Per-eigenvalue comparison of a ROM against its bound intervals."""

    kind: str
    ritz_values: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    passed: np.ndarray
    unstable_count: int
    p_cap: int

    @property
    def ok(self):
        return bool(self.passed.all()) and self.unstable_count <= self.p_cap

    def records(self):
        return [
            {
                "j": j + 1,
                "value": [float(t.real), float(t.imag)],
                "lower": float(lo),
                "upper": float(hi),
                "pass": bool(p),
            }
            for j, (t, lo, hi, p) in enumerate(zip(self.ritz_values, self.lower, self.upper, self.passed))
        ]

    def table(self):
        quantity = "Re" if self.kind == "strip" else "|.|"
        lines = [f"{'j':>3}  {'theta':>28}  {quantity:>12}  {'lower':>12}  {'upper':>12}  ok"]
        for r, t in zip(self.records(), self.ritz_values):
            q = t.real if self.kind == "strip" else abs(t)
            lines.append(f"{r['j']:>3}  {t.real:>13.6g}{t.imag:+13.6g}j  {q:>12.6g}  {r['lower']:>12.6g}"
                         f"  {r['upper']:>12.6g}  {'yes' if r['pass'] else 'NO'}")
        lines.append(f"unstable: {self.unstable_count}  cap: {self.p_cap}")
        return "\n".join(lines)


def _orthogonal_rom(rom):
    if rom.kind != "orthogonal":
        raise WrongProjectionKind(f"bounds require an orthogonal projection, got {rom.kind!r}")
    return rom.eigenvalues()


def check_rom_strips(A, rom, slack=SLACK):
    """Check ``M_{-(k-j+1)} <= Re theta_j <= M_j`` for every Ritz value of an orthogonal ROM."""
    theta = _orthogonal_rom(rom)
    theta = theta[canonical_order(theta)]
    b = strip_bounds(A)
    k = len(theta)
    if k > b.n:
        raise IndexOutOfRange(f"ROM order {k} exceeds n = {b.n}")
    lo = np.array([strip_interval(b, k, j)[0] for j in range(1, k + 1)])
    hi = np.array([strip_interval(b, k, j)[1] for j in range(1, k + 1)])
    passed = (theta.real >= lo - slack) & (theta.real <= hi + slack)
    return RomCheckReport("strip", theta, lo, hi, passed, count_unstable(theta, "continuous"), b.p_cap)


def check_rom_disks(A, rom, slack=SLACK):
    """Check ``|theta_j| <= G_j`` for Ritz values sorted by decreasing magnitude."""
    theta = _orthogonal_rom(rom)
    theta = theta[np.argsort(-np.abs(theta), kind="stable")]
    b = disk_bounds(A)
    k = len(theta)
    if k > len(b.G):
        raise IndexOutOfRange(f"ROM order {k} exceeds n = {len(b.G)}")
    hi = b.G[:k].copy()
    lo = np.zeros(k)
    passed = np.abs(theta) <= hi + slack
    return RomCheckReport("disk", theta, lo, hi, passed, count_unstable(theta, "discrete"), b.p_cap)


def unstable_subspace(A):
    """Eigenvectors of the Hermitian part for its positive eigenvalues.

    Returns
    -------
    V : ndarray, shape (n, q)
        Orthonormal; every eigenvalue of ``V* A V`` has real part at least ``mu_q``.
    q : int
        Number of strictly positive Hermitian-part eigenvalues.
    mu_q : float
        Smallest of them, or NaN when ``q = 0`` (``V`` is then n-by-0).
    """
    A = _square(A)
    eig = hermitian_eigen(hermitian_part(A), want_vectors=True)
    q = int(np.count_nonzero(eig.values > 0))
    if q == 0:
        return np.zeros((A.shape[0], 0), dtype=eig.vectors.dtype), 0, float("nan")
    return eig.vectors[:, :q], q, float(eig.values[q - 1])

