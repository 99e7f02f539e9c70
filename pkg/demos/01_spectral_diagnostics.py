"""Spectral diagnostics for a non-normal matrix.

A nonsymmetric Toeplitz tridiagonal matrix has a stable spectrum, but its
numerical abscissa is positive, so ||exp(tA)|| grows before it decays.
This script prints the scalar summary, then shows the initial slope and
the pseudospectral abscissa that explain the transient.
"""

import numpy as np

from romlab.diagnostics import (
    pseudo_abscissa_estimate,
    pseudospectra_grid,
    spectral_summary,
    transient_envelope_continuous,
)
from romlab.gallery import toeplitz_tridiag


def main():
    A = toeplitz_tridiag(8, 0.5, -2.0, 2.0)
    s = spectral_summary(A)
    print("spectral abscissa alpha  =", f"{s.alpha:+.6f}")
    print("numerical abscissa omega =", f"{s.omega:+.6f}")
    print("numerical radius nu      =", f"{s.nu:.6f}")

    h = 1e-6
    slope = (transient_envelope_continuous(A, [h])[0] - 1) / h
    print(f"slope of ||exp(tA)|| at t=0: {slope:+.6f} (equals omega)")

    t = np.linspace(0, 3, 7)
    for ti, v in zip(t, transient_envelope_continuous(A, t)):
        print(f"  t = {ti:4.1f}   ||exp(tA)|| = {v:.4f}")

    grid = pseudospectra_grid(A, resolution=81, eps_levels=(1e-1, 1e-2))
    for eps in grid.eps_levels:
        print(f"alpha_eps estimate at eps = {eps:g}: {pseudo_abscissa_estimate(grid, eps):+.4f}")


if __name__ == "__main__":
    main()
