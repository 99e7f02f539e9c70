"""Restarted Arnoldi with polynomial filters that remove unstable Ritz values from the reduced model."""

import csv
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import numerical_abscissa, transient_envelope_continuous, transient_envelope_discrete
from .errors import InputError
from .krylov import arnoldi, filtered_start_vector
from .linalg import as_matrix, as_vector
from .systems import LTISystem, project_orthogonal

__all__ = [
    "StabilizationRound",
    "StabilizationTrace",
    "EnvelopeTable",
    "stabilize_by_restart",
    "compare_transients",
    "numerical_abscissa_comparison",
]


def _unstable(values, threshold):
    if threshold == "continuous":
        return [complex(t) for t in values if t.real >= 0]
    return [complex(t) for t in values if abs(t) >= 1]


@dataclass
class StabilizationRound:
    """One Arnoldi build.  ``filter_roots`` were applied to the start vector before it."""

    filter_roots: list
    unstable_count_after: int
    ritz_values: np.ndarray
    rom: object = field(repr=False, default=None)

    def as_dict(self):
        return {
            "filter_roots": [[t.real, t.imag] for t in self.filter_roots],
            "unstable_count_after": self.unstable_count_after,
            "ritz_values": [[float(t.real), float(t.imag)] for t in self.ritz_values],
        }


@dataclass
class StabilizationTrace:
    rounds: list
    final_basis: np.ndarray
    converged: bool
    threshold: str = "continuous"

    @property
    def filter_degree(self):
        return sum(len(r.filter_roots) for r in self.rounds)

    @property
    def unstable_counts(self):
        return [r.unstable_count_after for r in self.rounds]

    def as_dict(self):
        return {
            "threshold": self.threshold,
            "converged": self.converged,
            "filter_degree": self.filter_degree,
            "rounds": [r.as_dict() for r in self.rounds],
        }


def stabilize_by_restart(A, x0, k, max_rounds=10, threshold="continuous"):
    """Filter the start vector at unstable Ritz values until the Arnoldi ROM is stable.

    Round 0 projects onto ``K_k(A, x0)``.  Round ``r`` multiplies the
    current start vector by ``prod (A - theta I)`` over the unstable Ritz
    values ``theta`` of round ``r - 1`` and projects again.  The loop stops
    at the first ROM with no unstable Ritz values or after ``max_rounds``
    filtering rounds.

    Parameters
    ----------
    A : (n, n) array_like
    x0 : (n,) array_like
    k : int
    max_rounds : int
        Number of filtering rounds allowed after round 0.
    threshold : {"continuous", "discrete"}
        Unstable means ``Re theta >= 0`` or ``|theta| >= 1`` respectively.

    Returns
    -------
    StabilizationTrace
        ``converged`` is False when the budget ran out; this is not an error.
    """
    A = as_matrix(A, "A")
    x = as_vector(x0, "x0")
    n = A.shape[0]
    if threshold not in ("continuous", "discrete"):
        raise InputError(f"threshold must be 'continuous' or 'discrete', got {threshold!r}")
    if not 1 <= k <= n:
        raise InputError(f"k must lie in [1, {n}], got {k}")
    if max_rounds < 1:
        raise InputError("max_rounds must be at least 1")
    sys = LTISystem.siso(A, x, x, domain=threshold)
    rounds = []
    roots = []
    V = None
    for r in range(max_rounds + 1):
        if roots:
            x = filtered_start_vector(A, x, roots)
        fac = arnoldi(A, x, k)
        V = fac.basis()
        rom = project_orthogonal(sys, V)
        theta = rom.eigenvalues()
        bad = _unstable(theta, threshold)
        rounds.append(StabilizationRound(list(roots), len(bad), theta, rom))
        if not bad:
            return StabilizationTrace(rounds, V, True, threshold)
        roots = bad
    return StabilizationTrace(rounds, V, False, threshold)


@dataclass
class EnvelopeTable:
    """Rows are times (or steps), columns are norms of the propagator for each model."""

    times: np.ndarray
    columns: dict

    def to_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        names = list(self.columns)
        w.writerow(["t"] + names)
        for i, t in enumerate(self.times):
            w.writerow([f"{t:.17g}"] + [f"{self.columns[c][i]:.17g}" for c in names])


def compare_transients(A, roms, times, domain="continuous"):
    """``||exp(t A)||`` next to ``||exp(t Ar)||`` for each ROM (powers for ``domain="discrete"``).

    For the discrete case ``times`` are the step counts ``0..max(times)``.
    """
    A = as_matrix(A, "A")
    for rom in roms:
        if rom.domain != domain:
            raise InputError(f"ROM domain {rom.domain!r} differs from {domain!r}")
    if domain == "continuous":
        times = np.asarray(times, dtype=float)
        env = transient_envelope_continuous
    elif domain == "discrete":
        steps = int(np.max(times))
        times = np.arange(steps + 1, dtype=float)

        def env(M, _):
            return transient_envelope_discrete(M, steps)
    else:
        raise InputError(f"unknown domain {domain!r}")
    cols = {"full": env(A, times)}
    for i, rom in enumerate(roms):
        cols[f"rom{i}"] = env(rom.Ar, times)
    return EnvelopeTable(times, cols)


def numerical_abscissa_comparison(A, roms):
    """``[omega(A), omega(Ar_1), ...]``."""
    return [numerical_abscissa(A)] + [numerical_abscissa(rom.Ar) for rom in roms]

