"""Projection bases: Arnoldi (plain, shift-invert, block), bi-Lanczos, POD and polynomial filters."""

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import _mp
from .errors import FilteredToZero, ImmediateBreakdown, InputError, ZeroStartVector
from .linalg import TOL, LUSolver, _gs_step, as_matrix, as_vector, general_eigen, orthonormalize

__all__ = [
    "ArnoldiFactorization",
    "BiLanczosFactorization",
    "arnoldi",
    "shift_invert_basis",
    "block_arnoldi",
    "bilanczos",
    "pod_basis",
    "filtered_start_vector",
]


@dataclass
class ArnoldiFactorization:
    """``A V[:, :k] = V H`` with orthonormal ``V`` and upper Hessenberg ``H``.

    Without breakdown ``V`` is n-by-(k+1) and ``H`` is (k+1)-by-k.  If the
    Krylov space becomes invariant after ``j`` vectors, ``breakdown_step`` is
    ``j``, ``V`` keeps those ``j`` columns and ``H`` is the square j-by-j
    block, so that ``A V = V H`` holds exactly.
    """

    V: np.ndarray
    H: np.ndarray
    breakdown_step: int | None = None

    @property
    def k(self):
        """Number of basis vectors usable for projection."""
        return self.H.shape[1]

    def basis(self, j=None):
        j = self.k if j is None else j
        return self.V[:, :j]

    def projected(self, j=None):
        """Leading j-by-j block of ``H``, equal to ``V_j* A V_j``."""
        j = self.k if j is None else j
        return self.H[:j, :j]

    def ritz_values(self, j=None):
        return general_eigen(self.projected(j)).values

    def residual(self, A):
        """``||A V_k - V H||_F``."""
        A = as_matrix(A, "A")
        k = self.k
        return float(np.linalg.norm(A @ self.V[:, :k] - self.V[:, : self.H.shape[0]] @ self.H))


def _arnoldi(matvec, b, k, scale):
    n = b.shape[0]
    nb = np.linalg.norm(b)
    if nb == 0:
        raise ZeroStartVector("starting vector is zero")
    if k < 1:
        raise InputError("k must be at least 1")
    if k > n:
        raise InputError(f"k = {k} exceeds the dimension n = {n}")
    v1 = b / nb
    dtype = np.result_type(v1.dtype, matvec(v1).dtype, np.float64)
    V = np.zeros((n, k + 1), dtype=dtype)
    H = np.zeros((k + 1, k), dtype=dtype)
    V[:, 0] = v1
    ref = scale
    for j in range(k):
        w = matvec(V[:, j])
        ref = max(ref, np.linalg.norm(w))
        for i in range(j + 1):
            h = np.vdot(V[:, i], w)
            H[i, j] += h
            w = w - h * V[:, i]
        h2 = V[:, : j + 1].conj().T @ w
        w = w - V[:, : j + 1] @ h2
        H[: j + 1, j] += h2
        beta = np.linalg.norm(w)
        if beta <= TOL.deflate * ref:
            return ArnoldiFactorization(V[:, : j + 1].copy(), H[: j + 1, : j + 1].copy(), j + 1)
        H[j + 1, j] = beta
        V[:, j + 1] = w / beta
    return ArnoldiFactorization(V, H, None)


def arnoldi(A, b, k):
    """Orthonormal basis of the Krylov space ``K_k(A, b)``.

    Modified Gram-Schmidt followed by one full reorthogonalization pass per
    step; subdiagonal entries ``H[j+1, j]`` are nonnegative.  A step whose new
    direction has norm below ``tol_deflate * ||A||_F`` ends the process with
    ``breakdown_step`` set (an invariant subspace has been found).
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    if A.shape[0] != A.shape[1] or A.shape[0] != b.shape[0]:
        raise InputError(f"shape mismatch: A {A.shape}, b {b.shape}")
    return _arnoldi(lambda x: A @ x, b, k, float(np.linalg.norm(A)))


def shift_invert_basis(A, b, mu, k):
    """Arnoldi factorization of ``(mu I - A)^{-1}`` started at ``b``.

    The resolvent is applied through one LU factorization; the returned ``H``
    represents ``(mu I - A)^{-1}``, not ``A``.
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    n = A.shape[0]
    lu = LUSolver(mu * np.eye(n) - A)
    return _arnoldi(lu.solve, b, k, 0.0)


def block_arnoldi(A, B, blocks):
    """Orthonormal basis of ``range([B, AB, ..., A^{blocks-1} B])`` with rank-revealing deflation.

    Returns
    -------
    V : ndarray, shape (n, rank)
    rank : int
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if blocks < 1:
        raise InputError("blocks must be at least 1")
    V, rank = orthonormalize(B)
    if rank == 0:
        raise ZeroStartVector("block of starting vectors is zero")
    scale = np.linalg.norm(A)
    last = V
    for _ in range(blocks - 1):
        new = []
        for x in (A @ last).T:
            r, _ = _gs_step(V, x)
            nr = np.linalg.norm(r)
            if nr <= TOL.deflate * max(scale, np.finfo(float).tiny):
                continue
            q = r / nr
            V = np.column_stack([V, q])
            new.append(q)
        if not new:
            break
        last = np.column_stack(new)
    return V, V.shape[1]


@dataclass
class BiLanczosFactorization:
    """Biorthogonal bases and the tridiagonal ``T = W* A V`` from the two-sided Lanczos process.

    ``breakdown_kind`` is ``None`` for a clean run, ``"near"`` when the run
    completed but some step had ``|w~* v~| < tol_near * ||w~|| ||v~||``,
    ``"lucky"`` when an invariant subspace stopped the process, and
    ``"serious"`` when ``beta_j`` (equivalently ``w~* v~``) vanished.
    """

    V: np.ndarray
    W: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray
    gammas: np.ndarray
    T: np.ndarray
    next_beta: complex | None = None
    next_gamma: float | None = None
    breakdown_step: int | None = None
    breakdown_kind: str | None = None
    min_cosine: float = 1.0

    @property
    def k(self):
        return self.T.shape[0]

    @property
    def completed(self):
        return self.breakdown_kind in (None, "near")


def _tridiag(alphas, betas, gammas):
    k = len(alphas)
    T = np.diag(np.asarray(alphas, dtype=complex))
    if k > 1:
        T += np.diag(np.asarray(betas[: k - 1], dtype=complex), 1)
        T += np.diag(np.asarray(gammas[: k - 1], dtype=complex), -1)
    return T


def bilanczos(A, b, c, k, dps=None):
    """Two-sided Lanczos for ``K_k(A, b)`` and ``K_k(A*, c)``.

    Normalization: ``v_1 = b / ||b||``, ``w_1`` is ``c`` scaled so that
    ``w_1* v_1 = 1``, each ``gamma_j = ||v~_{j+1}||`` is real positive and
    ``beta_j = w~_{j+1}* v~_{j+1} / gamma_j`` so that ``w_{j+1}* v_{j+1} = 1``.

    Parameters
    ----------
    A : (n, n) array_like
    b, c : (n,) array_like
        ``c`` may be an object array of ``mpmath.mpc`` when ``dps`` is set.
    k : int
    dps : int, optional
        Run the recurrence in ``dps``-digit arithmetic.  Results are rounded
        to double at the end.

    Raises
    ------
    ImmediateBreakdown
        If ``c* b`` vanishes relative to ``||b|| ||c||``.
    """
    if dps is not None:
        with mp.workdps(dps):
            return _bilanczos(_mp.to_mp(as_matrix(A, "A")), _mp.to_mp(b if _mp.is_mp(b) else as_vector(b, "b")),
                              _mp.to_mp(c if _mp.is_mp(c) else as_vector(c, "c")), k)
    return _bilanczos(as_matrix(A, "A"), as_vector(b, "b"), as_vector(c, "c"), k)


def _bilanczos(A, b, c, k):
    n = A.shape[0]
    if A.shape != (n, n) or b.shape != (n,) or c.shape != (n,):
        raise InputError(f"shape mismatch: A {A.shape}, b {b.shape}, c {c.shape}")
    if not 1 <= k <= n:
        raise InputError(f"k must lie in [1, {n}], got {k}")
    nb, nc = _mp.norm(b), _mp.norm(c)
    if nb == 0 or nc == 0:
        raise ZeroStartVector("b and c must be nonzero")
    scale = _mp.norm(A)
    AH = A.conj().T
    v = b / nb
    cb = _mp.vdot(c, v)
    if abs(cb) <= TOL.immediate * nc:
        raise ImmediateBreakdown("c* b = 0: no biorthogonal starting pair exists")
    w = c / _mp.conj(cb)

    vs, ws = [v], [w]
    alphas, betas, gammas = [], [], []
    v_prev = w_prev = None
    beta_prev = gamma_prev = 0
    next_beta = next_gamma = None
    step = kind = None
    min_cos = 1.0
    for j in range(1, k + 1):
        Av = A @ v
        alpha = _mp.vdot(w, Av)
        alphas.append(alpha)
        vt = Av - alpha * v
        wt = AH @ w - _mp.conj(alpha) * w
        if v_prev is not None:
            vt = vt - beta_prev * v_prev
            wt = wt - gamma_prev * w_prev
        gamma = _mp.norm(vt)
        nwt = _mp.norm(wt)
        if gamma <= TOL.deflate * scale or nwt <= TOL.deflate * scale * _mp.norm(w):
            step, kind = j, "lucky"
            break
        delta = _mp.vdot(wt, vt)
        beta = delta / gamma
        cos = float(abs(delta) / (gamma * nwt))
        min_cos = min(min_cos, cos)
        if abs(beta) <= TOL.breakdown * scale:
            step, kind = j, "serious"
            break
        if cos < TOL.near_breakdown and kind is None:
            kind = "near"
        v_next = vt / gamma
        w_next = wt / _mp.conj(beta)
        if j < k:
            betas.append(beta)
            gammas.append(gamma)
            v_prev, w_prev = v, w
            v, w = v_next, w_next
            beta_prev, gamma_prev = beta, gamma
            vs.append(v)
            ws.append(w)
        else:
            next_beta, next_gamma = beta, gamma
            vs.append(v_next)
            ws.append(w_next)

    conv = _mp.to_complex if _mp.is_mp(A) else np.asarray
    m = len(alphas)
    ncols = m + 1 if kind in (None, "near") else m
    V = np.column_stack([conv(x) for x in vs[:ncols]])
    W = np.column_stack([conv(x) for x in ws[:ncols]])
    alphas = conv(np.array(alphas, dtype=object if _mp.is_mp(A) else complex)).astype(complex)
    betas = conv(np.array(betas, dtype=object if _mp.is_mp(A) else complex)).astype(complex)
    gammas = np.array([float(g) for g in gammas])
    return BiLanczosFactorization(
        V=V,
        W=W,
        alphas=alphas,
        betas=betas,
        gammas=gammas,
        T=_tridiag(alphas, betas, gammas),
        next_beta=None if next_beta is None else complex(next_beta),
        next_gamma=None if next_gamma is None else float(next_gamma),
        breakdown_step=step,
        breakdown_kind=kind,
        min_cosine=min_cos,
    )


def pod_basis(snapshots, k):
    """Leading ``k`` left singular vectors of the snapshot matrix.

    Each column's phase is fixed so its largest-magnitude entry is real positive.
    """
    S = as_matrix(snapshots, "snapshots")
    if not 1 <= k <= min(S.shape):
        raise InputError(f"k must lie in [1, {min(S.shape)}], got {k}")
    U, _, _ = np.linalg.svd(S, full_matrices=False)
    U = U[:, :k]
    idx = np.argmax(np.abs(U), axis=0)
    phase = U[idx, np.arange(k)]
    return U * (np.abs(phase) / phase)[np.newaxis, :]


def _pair_roots(roots):
    """Split roots into real scalars, conjugate pairs (one representative) and unpaired complex roots."""
    roots = [complex(r) for r in roots]
    used = [False] * len(roots)
    factors = []
    for i, r in enumerate(roots):
        if used[i]:
            continue
        used[i] = True
        if r.imag == 0:
            factors.append(("real", r.real))
            continue
        best = None
        for j in range(i + 1, len(roots)):
            if not used[j] and abs(roots[j] - r.conjugate()) <= 1e-8 * max(1.0, abs(r)):
                best = j
                break
        if best is None:
            factors.append(("complex", r))
        else:
            used[best] = True
            factors.append(("pair", r))
    return factors


def filtered_start_vector(A, x0, roots):
    """Unit vector along ``prod_i (A - root_i I) x0``.

    Factors are applied one at a time with renormalization.  Conjugate
    pairs of roots are applied together as the real quadratic
    ``A^2 - 2 Re(r) A + |r|^2 I``, so a real ``A`` and ``x0`` with roots
    closed under conjugation give a real result.

    Raises
    ------
    FilteredToZero
        If some intermediate vector vanishes, i.e. ``x0`` lies in an
        invariant subspace annihilated by the filter.
    """
    A = as_matrix(A, "A")
    x = as_vector(x0, "x0")
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ZeroStartVector("x0 is zero")
    x = x / nx
    scale = float(np.linalg.norm(A))
    for kind, r in _pair_roots(roots):
        Ax = A @ x
        if kind == "pair":
            y = A @ Ax - 2 * r.real * Ax + abs(r) ** 2 * x
            ref = (scale + abs(r)) ** 2
        else:
            y = Ax - r * x
            ref = scale + abs(r)
        ny = np.linalg.norm(y)
        if ny <= TOL.deflate * ref:
            raise FilteredToZero(f"filter factor at {r} annihilated the starting vector")
        x = y / ny
    return x
