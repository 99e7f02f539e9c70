"""File formats: Matrix Market matrices, JSON system documents, CSV tables, atomic writes."""

import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np
import scipy.io

from .errors import InputError
from .systems import LTISystem

__all__ = [
    "atomic_write",
    "write_text",
    "write_json",
    "read_matrix_market",
    "write_matrix_market",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "SystemDocument",
    "read_system",
    "write_system",
]


def atomic_write(path, writer, mode="w"):
    """Call ``writer(fh)`` on a temporary file next to ``path``, then rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            writer(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text(path, text):
    atomic_write(path, lambda fh: fh.write(text))


def write_json(path, obj):
    write_text(path, json.dumps(obj, indent=2) + "\n")


def read_matrix_market(path):
    """Dense array from a Matrix Market file (array or coordinate format)."""
    try:
        m = scipy.io.mmread(str(path))
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: cannot read Matrix Market file ({exc})") from None
    if hasattr(m, "toarray"):
        m = m.toarray()
    return np.asarray(m)


def write_matrix_market(path, A, comment=""):
    """Write a dense matrix as ``%%MatrixMarket matrix array complex general`` at 17 digits."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))

    def writer(fh):
        buf = io.BytesIO()
        scipy.io.mmwrite(buf, A, comment=comment, field="complex", precision=17)
        fh.write(buf.getvalue())

    atomic_write(path, writer, mode="wb")


def _entry_to_json(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def _entry_from_json(e, name):
    if isinstance(e, bool):
        raise InputError(f"field {name!r}: boolean entry")
    if isinstance(e, (int, float)):
        return e
    if isinstance(e, list) and len(e) == 2 and all(isinstance(x, (int, float)) for x in e):
        return complex(e[0], e[1])
    raise InputError(f"field {name!r}: entries must be numbers or [re, im] pairs, got {e!r}")


def matrix_to_json(A):
    """Rows of entries; real entries as numbers, complex ones as ``[re, im]``."""
    return [[_entry_to_json(z) for z in row] for row in np.atleast_2d(A)]


def vector_to_json(x):
    return [_entry_to_json(z) for z in np.ravel(x)]


def matrix_from_json(rows, name="matrix"):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"field {name!r}: expected a nonempty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"field {name!r}: rows have different lengths")
    vals = [[_entry_from_json(e, name) for e in r] for r in rows]
    cplx = any(isinstance(e, complex) for r in vals for e in r)
    return np.array(vals, dtype=complex if cplx else float)


def vector_from_json(items, name="vector"):
    if not isinstance(items, list) or not items:
        raise InputError(f"field {name!r}: expected a nonempty list")
    vals = [_entry_from_json(e, name) for e in items]
    return np.array(vals, dtype=complex if any(isinstance(e, complex) for e in vals) else float)


def _load_field(doc, key, base, vector):
    value = doc[key]
    if isinstance(value, dict):
        if "file" not in value:
            raise InputError(f"field {key!r}: a reference object needs a 'file' entry")
        m = read_matrix_market(Path(base) / value["file"])
        return np.ravel(m) if vector else m
    if isinstance(value, str):
        m = read_matrix_market(Path(base) / value)
        return np.ravel(m) if vector else m
    return vector_from_json(value, key) if vector else matrix_from_json(value, key)


class SystemDocument:
    """A system as stored on disk, plus whatever optional extras the document carries.

    JSON layout::

        {"A": <matrix>, "B": <matrix>, "C": <matrix>, "d": <matrix>,
         "b": <vector>, "c": <vector>, "x0": <vector>, "snapshots": <matrix>,
         "domain": "continuous" | "discrete", "labels": {...},
         "prescription": {...}}

    A ``<matrix>`` is either a list of rows (entries are numbers or
    ``[re, im]`` pairs), a Matrix Market file name, or ``{"file": name}``;
    file names are relative to the document.  ``b`` and ``c`` are SISO
    shorthands for ``B = b`` and ``C = c*``.  Only ``A`` is required.
    """

    def __init__(self, A, B=None, C=None, d=None, domain="continuous", x0=None, snapshots=None,
                 labels=None, prescription=None):
        self.A = A
        self.B = B
        self.C = C
        self.d = d
        self.domain = domain
        self.x0 = x0
        self.snapshots = snapshots
        self.labels = labels or {}
        self.prescription = prescription

    @classmethod
    def from_system(cls, sys, **extra):
        return cls(sys.A, sys.B, sys.C, sys.d, sys.domain, **extra)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def b(self):
        return None if self.B is None else self.B[:, 0]

    @property
    def c(self):
        return None if self.C is None else self.C[0].conj()

    def start_vector(self, seed=None):
        """``x0`` if given, else ``b``, else a seeded random unit vector."""
        if self.x0 is not None:
            return self.x0
        if self.B is not None:
            return self.b
        x = np.random.default_rng(seed).standard_normal(self.n)
        return x / np.linalg.norm(x)

    def system(self):
        """The ``LTISystem``; missing ``B`` or ``C`` default to the start vector and its adjoint."""
        x = self.start_vector(0)
        B = self.B if self.B is not None else x[:, None]
        C = self.C if self.C is not None else x.conj()[None, :]
        return LTISystem(self.A, B, C, self.d, self.domain)

    @classmethod
    def from_dict(cls, doc, base="."):
        if not isinstance(doc, dict):
            raise InputError("system document must be a JSON object")
        if "A" not in doc:
            raise InputError("field 'A': missing")
        A = _load_field(doc, "A", base, False)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InputError(f"field 'A': must be square, got shape {A.shape}")
        n = A.shape[0]
        B = _load_field(doc, "B", base, False) if "B" in doc else None
        if "b" in doc:
            if B is not None:
                raise InputError("field 'b': give either 'b' or 'B'")
            B = _load_field(doc, "b", base, True)[:, None]
        C = _load_field(doc, "C", base, False) if "C" in doc else None
        if "c" in doc:
            if C is not None:
                raise InputError("field 'c': give either 'c' or 'C'")
            C = _load_field(doc, "c", base, True).conj()[None, :]
        d = _load_field(doc, "d", base, False) if "d" in doc else None
        x0 = _load_field(doc, "x0", base, True) if "x0" in doc else None
        snaps = _load_field(doc, "snapshots", base, False) if "snapshots" in doc else None
        for key, m, axis in (("B", B, 0), ("C", C, 1), ("snapshots", snaps, 0)):
            if m is not None and m.shape[axis] != n:
                raise InputError(f"field {key!r}: dimension {m.shape[axis]} does not match n = {n}")
        if x0 is not None and x0.shape != (n,):
            raise InputError(f"field 'x0': length {x0.size} does not match n = {n}")
        domain = doc.get("domain", "continuous")
        if domain not in ("continuous", "discrete"):
            raise InputError(f"field 'domain': must be 'continuous' or 'discrete', got {domain!r}")
        return cls(A, B, C, d, domain, x0, snaps, doc.get("labels"), doc.get("prescription"))

    def to_dict(self):
        out = {"domain": self.domain, "A": matrix_to_json(self.A)}
        if self.B is not None:
            out["B"] = matrix_to_json(self.B)
        if self.C is not None:
            out["C"] = matrix_to_json(self.C)
        if self.d is not None:
            out["d"] = matrix_to_json(self.d)
        if self.x0 is not None:
            out["x0"] = vector_to_json(self.x0)
        if self.snapshots is not None:
            out["snapshots"] = matrix_to_json(self.snapshots)
        if self.labels:
            out["labels"] = self.labels
        if self.prescription is not None:
            out["prescription"] = self.prescription
        return out


def read_system(path):
    """Load a JSON system document, or a bare Matrix Market file as ``A`` alone."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"{path}: no such file")
    if path.suffix.lower() == ".mtx":
        return SystemDocument(read_matrix_market(path))
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return SystemDocument.from_dict(doc, base=path.parent)


def write_system(path, document):
    write_json(path, document.to_dict())
