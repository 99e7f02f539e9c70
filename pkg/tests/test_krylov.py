import numpy as np
import pytest

from romlab.errors import FilteredToZero, ImmediateBreakdown, Singular, ZeroStartVector
from romlab.gallery import greenbaum_demo
from romlab.krylov import arnoldi, bilanczos, block_arnoldi, filtered_start_vector, pod_basis, shift_invert_basis
from romlab.systems import LTISystem, project_oblique


def same_span(X, Y, tol=1e-10):
    """Equal column spaces: rank of [X, Y] equals rank of X and of Y."""
    r = np.linalg.matrix_rank
    return r(X, tol) == r(Y, tol) == r(np.column_stack([X, Y]), tol)


def test_arnoldi_factorization(rng):
    A = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    fac = arnoldi(A, rng.standard_normal(12), 6)
    assert fac.V.shape == (12, 7) and fac.H.shape == (7, 6)
    assert fac.residual(A) < 1e-12 * np.linalg.norm(A)
    np.testing.assert_allclose(fac.V.conj().T @ fac.V, np.eye(7), atol=1e-13)
    assert np.all(np.tril(fac.H, -2) == 0)
    assert np.all(np.diag(fac.H, -1).real >= 0)
    V = fac.basis()
    np.testing.assert_allclose(V.conj().T @ A @ V, fac.projected(), atol=1e-10)


def test_arnoldi_breakdown_on_invariant_subspace():
    A = np.diag([1.0, 2.0, 3.0, 4.0])
    fac = arnoldi(A, [1.0, 1.0, 0.0, 0.0], 3)
    assert fac.breakdown_step == 2
    np.testing.assert_allclose(np.sort(fac.ritz_values().real), [1, 2])


def test_arnoldi_zero_start():
    with pytest.raises(ZeroStartVector):
        arnoldi(np.eye(3), np.zeros(3), 2)


def test_shift_invert_span_oracle():
    A = np.diag([-1.0, -2.0, -3.0])
    b = np.ones(3)
    V = shift_invert_basis(A, b, 0.0, 2).basis()
    Ainv = np.linalg.inv(-A)
    assert same_span(V, np.column_stack([b, Ainv @ b]))


def test_shift_invert_zero_shift_is_arnoldi_on_inverse(rng):
    A = rng.standard_normal((8, 8)) + 4 * np.eye(8)
    b = rng.standard_normal(8)
    V1 = shift_invert_basis(A, b, 0.0, 4).basis()
    V2 = arnoldi(np.linalg.inv(A), b, 4).basis()
    assert same_span(V1, V2, 1e-8)


def test_shift_invert_large_shift_approaches_b():
    A = np.diag([-1.0, -2.0])
    fac = shift_invert_basis(A, [3.0, 4.0], 1e8, 1)
    np.testing.assert_allclose(np.abs(fac.V[:, 0]), [0.6, 0.8], atol=1e-12)


def test_shift_invert_singular():
    with pytest.raises(Singular):
        shift_invert_basis(np.diag([-1.0, -2.0]), [1.0, 1.0], -1.0, 1)


def test_block_arnoldi_single_column_matches_arnoldi(rng):
    A = rng.standard_normal((9, 9))
    b = rng.standard_normal(9)
    V, rank = block_arnoldi(A, b[:, None], 4)
    assert rank == 4
    assert same_span(V, arnoldi(A, b, 4).basis())


@pytest.mark.parametrize("shift, expected", [(1, 4), (2, 6)])
def test_block_arnoldi_shift_matrix(shift, expected):
    # span{e1, e2, S e1, S e2, S^2 e1, S^2 e2}
    n = 8
    S = np.eye(n, k=-shift)
    V, rank = block_arnoldi(S, np.eye(n)[:, :2], 3)
    assert rank == expected
    assert same_span(V, np.eye(n)[:, :expected])


def test_block_arnoldi_deflates_duplicate_columns(rng):
    A = rng.standard_normal((6, 6))
    b = rng.standard_normal(6)
    V, rank = block_arnoldi(A, np.column_stack([b, b]), 2)
    assert rank == 2


def test_bilanczos_immediate_breakdown():
    with pytest.raises(ImmediateBreakdown):
        bilanczos(np.eye(3), [1.0, 0, 0], [0, 1.0, 0], 2)


def test_bilanczos_hermitian_reduces_to_lanczos(rng):
    X = rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10))
    A = X + X.conj().T
    b = rng.standard_normal(10)
    fac = bilanczos(A, b, b, 5)
    assert fac.completed
    np.testing.assert_allclose(fac.W, fac.V, atol=1e-10)
    np.testing.assert_allclose(fac.T, fac.T.conj().T, atol=1e-10)


def test_bilanczos_projection_reproduces_T(rng):
    A = rng.standard_normal((10, 10))
    b, c = rng.standard_normal(10), rng.standard_normal(10)
    fac = bilanczos(A, b, c, 4)
    assert fac.completed
    np.testing.assert_allclose(np.diag(fac.T, -1).imag, 0)
    assert np.all(np.diag(fac.T, -1).real > 0)
    rom = project_oblique(LTISystem.siso(A, b, c), fac.V[:, :4], fac.W[:, :4])
    np.testing.assert_allclose(rom.Ar, fac.T, atol=1e-10)


def test_bilanczos_extended_precision_agrees(rng):
    A = rng.standard_normal((8, 8))
    b, c = rng.standard_normal(8), rng.standard_normal(8)
    f1 = bilanczos(A, b, c, 3)
    f2 = bilanczos(A, b, c, 3, dps=40)
    np.testing.assert_allclose(f1.T, f2.T, atol=1e-9)


def test_bilanczos_lucky_breakdown():
    A = np.diag([1.0, 2.0, 3.0, 4.0])
    b = np.array([1.0, 1.0, 0, 0])
    fac = bilanczos(A, b, b, 3)
    assert fac.breakdown_kind == "lucky" and fac.breakdown_step == 2


def test_bilanczos_example_gammas():
    sys, p = greenbaum_demo()
    from romlab.adversarial import greenbaum_system

    c, gammas, _ = greenbaum_system(sys.A, sys.b, p, dps=50)
    fac = bilanczos(sys.A, sys.b, c, 8, dps=50)
    np.testing.assert_allclose(np.diag(fac.T), 2, atol=1e-8)
    np.testing.assert_allclose(np.diag(fac.T, 1), 1, atol=1e-8)
    np.testing.assert_allclose(np.diag(fac.T, -1).real,
                               [4.12311, 3.68474, 4.12603, 4.31536, 4.43571, 4.52257, 4.58628], atol=1e-5)


def test_pod_orthogonal_columns():
    S = np.diag([3.0, 2.0, 1.0])[:, [1, 0, 2]]
    V = pod_basis(S, 2)
    np.testing.assert_allclose(V, np.eye(3)[:, :2], atol=1e-15)


def test_pod_rank_one(rng):
    u = rng.standard_normal(7)
    S = np.outer(u, rng.standard_normal(4))
    V = pod_basis(S, 1)
    assert abs(abs(np.vdot(V[:, 0], u)) - np.linalg.norm(u)) < 1e-12


def test_pod_projection_error_is_tail(rng):
    S = rng.standard_normal((10, 6))
    V = pod_basis(S, 3)
    s = np.linalg.svd(S, compute_uv=False)
    err = np.linalg.norm(S - V @ (V.conj().T @ S))
    assert err == pytest.approx(np.sqrt(np.sum(s[3:] ** 2)), abs=1e-10)


def test_filter_empty_roots():
    np.testing.assert_allclose(filtered_start_vector(np.eye(2), [3.0, 4.0], []), [0.6, 0.8])


def test_filter_annihilates_root_component():
    x = filtered_start_vector(np.diag([1.0, -1.0]), [1.0, 1.0], [1.0])
    np.testing.assert_allclose(np.abs(x), [0, 1], atol=1e-15)


def test_filter_to_zero():
    with pytest.raises(FilteredToZero):
        filtered_start_vector(np.diag([1.0, -1.0]), [1.0, 0.0], [1.0])


def test_filter_conjugate_pair_stays_real(rng):
    A = rng.standard_normal((6, 6))
    x = filtered_start_vector(A, rng.standard_normal(6), [1 + 2j, 1 - 2j, 0.5])
    assert np.isrealobj(x) or np.all(x.imag == 0)
    assert np.linalg.norm(x) == pytest.approx(1)


def test_filter_orthogonal_to_filtered_eigenvectors(rng):
    Q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    lam = np.array([1 + 1j, 2, -1, -2j, 3, 0.5])
    A = Q @ np.diag(lam) @ Q.conj().T
    x = filtered_start_vector(A, rng.standard_normal(6), lam[:3])
    assert np.max(np.abs(Q[:, :3].conj().T @ x)) < 1e-8


def test_filter_scale_invariance(rng):
    A = rng.standard_normal((7, 7))
    x0 = rng.standard_normal(7)
    V1 = arnoldi(A, filtered_start_vector(A, x0, [0.3, -0.2]), 3).basis()
    y = x0.copy()
    for r in (0.3, -0.2):
        y = A @ y - r * y
    V2 = arnoldi(A, y * 1e5, 3).basis()
    assert same_span(V1, V2, 1e-8)
