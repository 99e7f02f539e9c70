"""Extended-precision helpers: numpy object arrays holding ``mpmath.mpc`` entries.

Used only where a construction is too ill-conditioned for double precision.
Callers wrap computations in ``mpmath.workdps``.
"""

import mpmath as mp
import numpy as np

_to_mpc = np.frompyfunc(mp.mpc, 1, 1)
_to_complex = np.frompyfunc(complex, 1, 1)


def to_mp(a):
    a = np.asarray(a)
    if a.dtype != object:
        a = a.astype(complex)
    return _to_mpc(a).astype(object)


def to_complex(a):
    return _to_complex(np.asarray(a, dtype=object)).astype(complex)


def is_mp(a):
    return isinstance(a, np.ndarray) and a.dtype == object


def norm(x):
    if is_mp(x):
        return mp.sqrt(mp.fsum(abs(e) ** 2 for e in x.ravel()))
    return float(np.linalg.norm(x))


def vdot(x, y):
    """``x* y``."""
    if is_mp(x) or is_mp(y):
        return mp.fsum(a.conjugate() * b for a, b in zip(x, y)) if len(x) else mp.mpc(0)
    return np.vdot(x, y)


def conj(z):
    return z.conjugate()
