"""Oblique projection can destabilize a Hermitian stable system.

For a Hermitian negative definite A every orthogonal ROM is stable.  The
Greenbaum-style construction chooses a left vector c so that two-sided
Lanczos on (A, b, c) produces a prescribed tridiagonal with unstable
eigenvalues.  Extended precision (dps=50) reproduces the target exactly.
"""

import numpy as np

from romlab.adversarial import greenbaum_system, verify_greenbaum
from romlab.gallery import greenbaum_demo


def main():
    sys, p = greenbaum_demo()
    print("eigenvalues of A:", np.round(np.linalg.eigvalsh(sys.A)[[0, -1]], 4), "(range)")
    c, gammas, _ = greenbaum_system(sys.A, sys.b, p, dps=50)
    print("subdiagonal gammas:", np.round(gammas[:7], 5))
    rep = verify_greenbaum(sys.A, sys.b, c, p, gammas, dps=50)
    print("tridiagonal matches:", rep.matches, " mismatch:", float(rep.mismatch))
    print("unstable eigenvalues of T_k, k = 1..8:", rep.unstable_counts)


if __name__ == "__main__":
    main()
