"""How many unstable Ritz values can an orthogonal projection produce?

The strip bounds use the eigenvalues of the Hermitian part: the number of
nonnegative prefix means caps the unstable count of any orthogonal ROM.
The disk bounds do the same for discrete-time stability.  This script
prints both sets of bounds and then checks a few random projections.
"""

import numpy as np

from romlab.bounds import check_rom_disks, check_rom_strips, disk_bounds, strip_bounds
from romlab.gallery import geometric_superdiag, toeplitz_tridiag
from romlab.systems import LTISystem, project_orthogonal


def random_rom(A, k, rng):
    V, _ = np.linalg.qr(rng.standard_normal((A.shape[0], k)))
    return project_orthogonal(LTISystem.siso(A, V[:, 0]), V)


def main():
    rng = np.random.default_rng(0)

    A = toeplitz_tridiag(8, 0.5, -2.0, 2.0)
    b = strip_bounds(A)
    print("continuous: M    =", np.round(b.M[:4], 5))
    print("            Mneg =", np.round(b.Mneg[:4], 5))
    print("            at most", b.p_cap, "unstable Ritz values for any k")
    for k in (2, 4, 6):
        r = check_rom_strips(A, random_rom(A, k, rng))
        print(f"  k = {k}: unstable = {r.unstable_count}, within strips = {r.ok}")

    G = geometric_superdiag(128, 0.75)
    d = disk_bounds(G)
    print("discrete:   G =", np.round(d.G[:4], 5))
    print("            at most", d.p_cap, "Ritz values outside the unit disk")
    for k in (1, 5, 10):
        r = check_rom_disks(G, random_rom(G, k, rng))
        print(f"  k = {k}: unstable = {r.unstable_count}, within disks = {r.ok}")


if __name__ == "__main__":
    main()
