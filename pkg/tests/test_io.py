import json

import numpy as np
import pytest

from romlab.errors import InputError
from romlab.io import (
    SystemDocument,
    read_matrix_market,
    read_system,
    write_json,
    write_matrix_market,
    write_system,
)


def test_matrix_market_header_and_roundtrip(tmp_path, rng):
    A = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    p = tmp_path / "a.mtx"
    write_matrix_market(p, A)
    assert p.read_text().splitlines()[0] == "%%MatrixMarket matrix array complex general"
    assert np.array_equal(read_matrix_market(p), A)


def test_matrix_market_real_as_complex(tmp_path):
    p = tmp_path / "r.mtx"
    write_matrix_market(p, np.array([[0.1, 2.0]]))
    assert "complex" in p.read_text().splitlines()[0]
    np.testing.assert_array_equal(read_matrix_market(p).real, [[0.1, 2.0]])


def test_matrix_market_coordinate(tmp_path):
    p = tmp_path / "c.mtx"
    p.write_text("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 3.5\n")
    np.testing.assert_array_equal(read_matrix_market(p), [[0, 3.5], [0, 0]])


def test_system_document_roundtrip_bitwise(tmp_path):
    A = np.array([[0.1, -2.3], [1e-17, 4.5]])
    doc = SystemDocument(A, np.array([[1.0], [2.0 + 0.5j]]), np.array([[0.3, 0.7]]), domain="discrete")
    write_system(tmp_path / "s.json", doc)
    back = read_system(tmp_path / "s.json")
    assert np.array_equal(back.A, A) and back.A.dtype == np.float64
    assert np.array_equal(back.B, doc.B) and np.array_equal(back.C, doc.C)
    assert back.domain == "discrete"


def test_system_document_file_reference(tmp_path, rng):
    A = rng.standard_normal((4, 4))
    write_matrix_market(tmp_path / "A.mtx", A)
    write_json(tmp_path / "s.json", {"A": {"file": "A.mtx"}, "b": [1, 0, 0, [0, 1]]})
    doc = read_system(tmp_path / "s.json")
    np.testing.assert_array_equal(doc.A.real, A)
    np.testing.assert_array_equal(doc.b, [1, 0, 0, 1j])
    sys = doc.system()
    np.testing.assert_array_equal(sys.c, doc.b)


@pytest.mark.parametrize("doc, field", [
    ({}, "A"),
    ({"A": [[1, 2]]}, "A"),
    ({"A": [[1, 2], [3]]}, "A"),
    ({"A": [[1]], "b": [1, 2]}, "B"),
    ({"A": [[1]], "b": [1], "B": [[1]]}, "b"),
    ({"A": [[1]], "domain": "hybrid"}, "domain"),
    ({"A": [["x"]]}, "A"),
    ({"A": {"path": "a"}}, "A"),
])
def test_system_document_errors_name_field(tmp_path, doc, field):
    write_json(tmp_path / "s.json", doc)
    with pytest.raises(InputError, match=f"'{field}'"):
        read_system(tmp_path / "s.json")


def test_bad_json_and_missing(tmp_path):
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(InputError):
        read_system(tmp_path / "bad.json")
    with pytest.raises(InputError):
        read_system(tmp_path / "none.json")


def test_bare_matrix_market_input(tmp_path):
    write_matrix_market(tmp_path / "A.mtx", np.eye(2))
    doc = read_system(tmp_path / "A.mtx")
    assert doc.n == 2 and doc.B is None


def test_start_vector_seeded():
    doc = SystemDocument(np.eye(3))
    assert np.array_equal(doc.start_vector(5), doc.start_vector(5))
    assert np.linalg.norm(doc.start_vector(5)) == pytest.approx(1)


def test_atomic_write_leaves_no_temp(tmp_path):
    write_json(tmp_path / "x.json", {"a": 1})
    assert [p.name for p in tmp_path.iterdir()] == ["x.json"]
    assert json.loads((tmp_path / "x.json").read_text()) == {"a": 1}
