"""State-space systems, projected reduced-order models, moments and simulation."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningWarning, InputError, MatrixOverflow, NotBiorthogonal, NotOrthonormal
from .linalg import TOL, LUSolver, as_matrix, as_vector, general_eigen, matrix_exponential

__all__ = [
    "LTISystem",
    "ReducedModel",
    "project_orthogonal",
    "project_oblique",
    "moments",
    "verify_moment_match",
    "transfer_function",
    "simulate_homogeneous",
    "simulate_discrete",
]

DOMAINS = ("continuous", "discrete")


def _check_domain(domain):
    if domain not in DOMAINS:
        raise InputError(f"domain must be one of {DOMAINS}, got {domain!r}")
    return domain


@dataclass
class LTISystem:
    """``x' = A x + B u, y = C x + d u`` (or the discrete-time analogue).

    ``B`` is n-by-m, ``C`` is p-by-n (so a SISO output vector ``c`` enters as
    the row ``c*``) and ``d`` is p-by-m.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    d: np.ndarray | None = None
    domain: str = "continuous"

    def __post_init__(self):
        self.A = as_matrix(self.A, "A")
        n = self.A.shape[0]
        if self.A.shape[1] != n:
            raise InputError(f"A: must be square, got shape {self.A.shape}")
        self.B = as_matrix(self.B, "B")
        if self.B.shape[0] != n:
            raise InputError(f"B: expected {n} rows, got {self.B.shape[0]}")
        self.C = as_matrix(self.C, "C")
        if self.C.shape[1] != n:
            raise InputError(f"C: expected {n} columns, got {self.C.shape[1]}")
        shape = (self.C.shape[0], self.B.shape[1])
        if self.d is None:
            self.d = np.zeros(shape)
        else:
            self.d = as_matrix(self.d, "d")
            if self.d.shape == (1, 1) and shape != (1, 1):
                self.d = np.full(shape, self.d[0, 0])
            if self.d.shape != shape:
                raise InputError(f"d: expected shape {shape}, got {self.d.shape}")
        _check_domain(self.domain)

    @classmethod
    def siso(cls, A, b, c=None, d=0.0, domain="continuous"):
        """Single-input single-output system with output ``y = c* x + d u``.

        ``c`` defaults to ``b``.
        """
        b = as_vector(b, "b")
        c = b if c is None else as_vector(c, "c")
        return cls(A, b[:, None], c.conj()[None, :], np.array([[d]]), domain)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def b(self):
        """First input column."""
        return self.B[:, 0]

    @property
    def c(self):
        """First output vector ``c`` such that ``y = c* x``."""
        return self.C[0].conj()


@dataclass
class ReducedModel:
    V: np.ndarray
    W: np.ndarray
    Ar: np.ndarray
    br: np.ndarray
    cr: np.ndarray
    d: np.ndarray
    kind: str
    domain: str = "continuous"
    metadata: dict = field(default_factory=dict)

    @property
    def k(self):
        return self.Ar.shape[0]

    def eigenvalues(self):
        return general_eigen(self.Ar).values

    def as_system(self):
        return LTISystem(self.Ar, self.br, self.cr, self.d, self.domain)

    def reconstruction_error(self, A):
        """``||W* A V - Ar||_F / ||A||_F``."""
        A = as_matrix(A, "A")
        scale = max(np.linalg.norm(A), np.finfo(float).tiny)
        return float(np.linalg.norm(self.W.conj().T @ A @ self.V - self.Ar) / scale)


def project_orthogonal(sys, V):
    """Galerkin ROM ``(V* A V, V* B, C V, d)`` for ``V`` with orthonormal columns."""
    V = as_matrix(V, "V")
    if V.shape[0] != sys.n:
        raise InputError(f"V: expected {sys.n} rows, got {V.shape[0]}")
    k = V.shape[1]
    if np.linalg.norm(V.conj().T @ V - np.eye(k)) > TOL.orth * max(1.0, np.sqrt(k)):
        raise NotOrthonormal("V*V differs from the identity")
    Vh = V.conj().T
    return ReducedModel(V, V, Vh @ sys.A @ V, Vh @ sys.B, sys.C @ V, sys.d.copy(), "orthogonal", sys.domain)


def project_oblique(sys, V, W):
    """Petrov-Galerkin ROM ``(W* A V, W* B, C V, d)`` for biorthogonal ``W* V = I``."""
    V = as_matrix(V, "V")
    W = as_matrix(W, "W")
    if V.shape != W.shape or V.shape[0] != sys.n:
        raise InputError(f"V and W must both be {sys.n}-by-k, got {V.shape} and {W.shape}")
    k = V.shape[1]
    if np.linalg.norm(W.conj().T @ V - np.eye(k)) > TOL.biorth * max(1.0, np.sqrt(k)):
        raise NotBiorthogonal("W*V differs from the identity")
    Wh = W.conj().T
    return ReducedModel(V, W, Wh @ sys.A @ V, Wh @ sys.B, sys.C @ V, sys.d.copy(), "oblique", sys.domain)


def _as_system(model):
    return model.as_system() if isinstance(model, ReducedModel) else model


def moments(sys, count, expansion="infinity"):
    """Markov parameters ``C A^s B`` or, for finite ``expansion = mu``, ``C (mu I - A)^{-(s+1)} B``.

    Parameters
    ----------
    sys : LTISystem or ReducedModel
    count : int
        Number of moments, ``s = 0, ..., count - 1``.
    expansion : "infinity" or complex
    """
    sys = _as_system(sys)
    if count < 1:
        raise InputError("count must be at least 1")
    out = []
    if isinstance(expansion, str):
        if expansion != "infinity":
            raise InputError(f"unknown expansion point {expansion!r}")
        x = sys.B
        for _ in range(count):
            out.append(sys.C @ x)
            x = sys.A @ x
        return out
    mu = complex(expansion)
    lu = LUSolver(mu * np.eye(sys.n) - sys.A)
    x = sys.B
    for _ in range(count):
        x = lu.solve(x)
        out.append(sys.C @ x)
    return out


def verify_moment_match(full, rom, count, expansion="infinity"):
    """Relative error of each of the first ``count`` moments of ``rom`` against ``full``.

    Moments of the full model larger than 1e12 in norm trigger a
    :class:`ConditioningWarning`; the errors are still returned.
    """
    mf = moments(full, count, expansion)
    mr = moments(rom, count, expansion)
    errs = []
    for a, b in zip(mf, mr):
        na = np.linalg.norm(a)
        errs.append(float(np.linalg.norm(a - b) / max(na, 1e-300)))
    big = max(np.linalg.norm(a) for a in mf)
    if big > 1e12:
        warnings.warn(f"full-model moments reach {big:.2e}; relative errors reflect conditioning",
                      ConditioningWarning, stacklevel=2)
    return errs


def transfer_function(sys, z):
    """``H(z) = C (z I - A)^{-1} B + d``."""
    sys = _as_system(sys)
    lu = LUSolver(complex(z) * np.eye(sys.n) - sys.A)
    return sys.C @ lu.solve(sys.B) + sys.d


def simulate_homogeneous(A, x0, times):
    """States ``exp(t A) x0`` at each requested time, and their 2-norms.

    Each state uses its own exponential of ``t A`` rather than time stepping.
    """
    A = as_matrix(A, "A")
    x0 = as_vector(x0, "x0")
    times = np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise InputError("times must be nonnegative and ascending")
    states = np.array([matrix_exponential(t * A) @ x0 for t in times])
    return np.linalg.norm(states, axis=1), states


def simulate_discrete(A, x0, steps):
    """Iterates ``x_{j+1} = A x_j`` for ``j < steps`` and their 2-norms (``steps + 1`` entries)."""
    A = as_matrix(A, "A")
    x = as_vector(x0, "x0")
    if steps < 0:
        raise InputError("steps must be nonnegative")
    states = [x]
    with np.errstate(over="raise", invalid="raise"):
        try:
            for _ in range(steps):
                x = A @ x
                states.append(x)
        except FloatingPointError:
            raise MatrixOverflow("discrete iteration overflowed") from None
    states = np.array(states)
    return np.linalg.norm(states, axis=1), states
