"""A stable system whose Arnoldi ROMs are completely unstable.

The prescribed-Ritz construction builds (A, b) with eigenvalues -1..-8
while the order-k Arnoldi ROM has Ritz values 1..k.  The matrix has a huge
numerical abscissa, and its pseudospectrum at eps = 1e-4 reaches into the
right half-plane.
"""

import numpy as np

from romlab.adversarial import prescribed_ritz_system, verify_prescribed_ritz
from romlab.diagnostics import numerical_abscissa, pseudo_abscissa_estimate, pseudospectra_grid
from romlab.gallery import dm12_prescription
from romlab.krylov import arnoldi


def main():
    p = dm12_prescription()
    A, b = prescribed_ritz_system(p)
    np.set_printoptions(linewidth=120, suppress=True)
    print(A.astype(int))

    fac = arnoldi(A, b, 7)
    for k in range(1, 8):
        print(f"k = {k}: Ritz values", np.round(np.sort(fac.ritz_values(k).real), 8))

    rep = verify_prescribed_ritz(A, b, p)
    print("max stage mismatch:", rep.max_stage_mismatch)
    print(f"omega(A) = {numerical_abscissa(A):.6g}")
    grid = pseudospectra_grid(A, (-10, 10), (-15, 15), 81, (1e-4,))
    print(f"alpha_eps(1e-4) estimate = {pseudo_abscissa_estimate(grid, 1e-4):+.3f}")


if __name__ == "__main__":
    main()
