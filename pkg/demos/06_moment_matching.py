"""Krylov ROMs match moments of the transfer function.

One-sided Arnoldi with k vectors matches k moments c* A^j b; two-sided
Lanczos matches 2k.  Shift-invert Arnoldi matches moments at a finite
shift instead of at infinity.
"""

import numpy as np

from romlab.krylov import arnoldi, bilanczos
from romlab.systems import LTISystem, project_oblique, project_orthogonal, transfer_function, verify_moment_match


def main():
    rng = np.random.default_rng(7)
    n, k = 16, 4
    X = rng.standard_normal((n, n))
    A = -(X @ X.T) / n - np.eye(n)
    b, c = rng.standard_normal(n), rng.standard_normal(n)
    sys = LTISystem.siso(A, b, c)

    rom = project_orthogonal(sys, arnoldi(A, b, k).basis())
    err = verify_moment_match(sys, rom, 2 * k)
    print("Arnoldi   relative moment errors:", " ".join(f"{e:.1e}" for e in err))

    fac = bilanczos(A, b, c, k)
    brom = project_oblique(sys, fac.V[:, :k], fac.W[:, :k])
    err = verify_moment_match(sys, brom, 2 * k + 1)
    print("Lanczos   relative moment errors:", " ".join(f"{e:.1e}" for e in err))

    for s in (0.5j, 2j):
        print(f"H({s}) full = {complex(np.ravel(transfer_function(sys, s))[0]):.6f}   ROM = {complex(np.ravel(transfer_function(brom, s))[0]):.6f}")


if __name__ == "__main__":
    main()
