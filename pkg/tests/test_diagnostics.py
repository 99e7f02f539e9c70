import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from romlab.diagnostics import (
    PseudospectraGrid,
    hermitian_part,
    in_numerical_range,
    numerical_abscissa,
    numerical_radius,
    numerical_range_boundary,
    pseudo_abscissa_estimate,
    pseudo_radius_estimate,
    pseudospectra_grid,
    spectral_summary,
    stone_bound_check,
    support_function,
    transient_envelope_continuous,
    transient_envelope_discrete,
    transient_lower_bound,
)
from romlab.errors import InputError
from romlab.gallery import dm12_demo, geometric_superdiag

from conftest import nonnormal


def test_hermitian_part_examples():
    np.testing.assert_array_equal(hermitian_part([[-1.0, 4.0], [0.0, -1.0]]), [[-1, 2], [2, -1]])
    H = np.array([[1.0, 2j], [-2j, 3.0]])
    np.testing.assert_array_equal(hermitian_part(H), H)
    np.testing.assert_array_equal(hermitian_part([[0.0, 1.0], [-1.0, 0.0]]), np.zeros((2, 2)))


def test_summary_toeplitz(toeplitz8):
    s = spectral_summary(toeplitz8)
    assert s.omega == pytest.approx(0.34923, abs=1e-5)
    assert s.omega == pytest.approx(s.mu[0], abs=1e-10)


def test_summary_normal_diagonal():
    s = spectral_summary(np.diag([-1.0, -2 + 1j]))
    assert s.alpha == pytest.approx(-1)
    assert s.omega == pytest.approx(-1)


def test_summary_invariants(rng):
    for _ in range(10):
        s = spectral_summary(nonnormal(rng, 7))
        assert s.alpha <= s.omega + 1e-12
        assert s.rho <= s.nu + 1e-12
        assert s.nu <= s.s[0] + 1e-12
        assert np.all(np.diff(s.mu) <= 0) and np.all(np.diff(s.s) <= 0)


def test_numerical_radius_jordan():
    # W([[0,1],[0,0]]) is the disk of radius 1/2
    assert numerical_radius([[0.0, 1.0], [0.0, 0.0]]) == pytest.approx(0.5, abs=1e-12)


def test_numerical_radius_matches_independent_optimizer(rng):
    A = nonnormal(rng, 6)
    t, h = support_function(A, 20000)
    i = int(np.argmax(h))

    def neg(theta):
        r = np.exp(1j * theta)
        return -np.linalg.eigvalsh(0.5 * (r * A + np.conj(r) * A.conj().T))[-1]

    res = minimize_scalar(neg, bounds=(t[i] - 1e-3, t[i] + 1e-3), method="bounded", options={"xatol": 1e-12})
    nu = numerical_radius(A)
    assert nu >= h.max() - 1e-12
    assert nu == pytest.approx(-res.fun, abs=1e-9)


def test_boundary_hermitian_on_segment():
    H = np.diag([2.0, -1.0, 0.5])
    pts = numerical_range_boundary(H, 36)
    np.testing.assert_allclose(pts.imag, 0, atol=1e-14)
    assert pts.real.min() >= -1 - 1e-14 and pts.real.max() <= 2 + 1e-14


def test_boundary_jordan_circle():
    pts = numerical_range_boundary([[0.0, 1.0], [0.0, 0.0]], 64)
    np.testing.assert_allclose(np.abs(pts), 0.5, atol=1e-12)


def test_boundary_toeplitz_rightmost(toeplitz8):
    assert numerical_range_boundary(toeplitz8, 360).real.max() == pytest.approx(0.34923, abs=1e-5)


def test_boundary_normal_in_hull(rng):
    lam = np.array([1 + 1j, -1 + 0.5j, -0.5 - 1j, 0.8 - 0.8j])
    Q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    A = Q @ np.diag(lam) @ Q.conj().T
    pts = numerical_range_boundary(A, 90)
    # hull of lam tested through its own supporting half-planes
    D = np.diag(lam)
    assert np.all(in_numerical_range(D, pts, tol=1e-8, angles=720))


def test_in_numerical_range_basic(toeplitz8):
    lam = np.linalg.eigvals(toeplitz8)
    assert np.all(in_numerical_range(toeplitz8, lam))
    assert not in_numerical_range(toeplitz8, numerical_abscissa(toeplitz8) + 1)


def test_pseudospectra_zero_matrix():
    g = pseudospectra_grid(np.zeros((2, 2)), (-1, 1), (-1, 1), 5)
    np.testing.assert_allclose(g.values, np.abs(g.points), atol=1e-15)
    assert g.values.min() == 0


def test_pseudospectra_normal_distance(rng):
    lam = np.array([-1.0, 1j, 2 - 1j])
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    A = Q @ np.diag(lam) @ Q.conj().T
    g = pseudospectra_grid(A, (-2, 3), (-2, 2), (21, 17))
    dist = np.min(np.abs(g.points[..., None] - lam), axis=-1)
    np.testing.assert_allclose(g.values, dist, atol=1e-10)


def test_pseudospectra_threads_identical(rng):
    A = nonnormal(rng, 5)
    g1 = pseudospectra_grid(A, resolution=21)
    g2 = pseudospectra_grid(A, resolution=21, workers=4)
    assert np.array_equal(g1.values, g2.values)


def test_pseudospectra_resolution_check():
    with pytest.raises(InputError):
        pseudospectra_grid(np.eye(2), resolution=1)


def test_pseudospectra_csv_roundtrip(rng):
    g = pseudospectra_grid(nonnormal(rng, 3), resolution=(4, 3))
    buf = io.StringIO()
    g.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 4 and len(lines[0].split(",")) == 5
    buf.seek(0)
    g2 = PseudospectraGrid.from_csv(buf)
    assert np.array_equal(g2.values, g.values)
    assert np.array_equal(g2.real_axis, g.real_axis) and np.array_equal(g2.imag_axis, g.imag_axis)


def test_pseudo_abscissa_disk():
    g = pseudospectra_grid(np.array([[-1.0]]), (-2, 0), (-1, 1), 201)
    assert pseudo_abscissa_estimate(g, 0.5) == pytest.approx(-0.5, abs=g.spacing)
    # grid offset so no point sits on the eigenvalue
    g = pseudospectra_grid(np.array([[-1.0]]), (-2.005, 0.005), (-1, 1), 20)
    assert pseudo_abscissa_estimate(g, 1e-9) == -np.inf


def test_pseudo_radius_disk():
    g = pseudospectra_grid(np.array([[0.5]]), (-0.2, 1.0), (-0.6, 0.6), 241)
    assert pseudo_radius_estimate(g, 0.1) == pytest.approx(0.6, abs=g.spacing)


def test_pseudo_radius_monotone_and_above_rho():
    A = geometric_superdiag(32)
    rho = np.abs(np.linalg.eigvals(A)).max()
    g = pseudospectra_grid(A, (-1.2, 1.4), (-1.3, 1.3), 81)
    vals = [pseudo_radius_estimate(g, e) for e in (0.1, 0.05, 0.02)]
    assert vals[0] >= vals[1] >= vals[2]
    assert vals[1] > rho


def test_pseudo_abscissa_monotone(rng):
    g = pseudospectra_grid(nonnormal(rng, 6), resolution=41)
    vals = [pseudo_abscissa_estimate(g, e) for e in (1e-2, 1e-1, 1.0)]
    assert vals[0] <= vals[1] <= vals[2]


def test_pseudospectra_small_at_eigenvalues(rng):
    A = np.diag([1.0, -1.0, 0.5j])
    g = pseudospectra_grid(A, (-1, 1), (-1, 1), 5)
    assert g.values[2, 4] < 1e-10 and g.values[2, 0] < 1e-10


def test_dm12_pseudospectrum_crosses_axis():
    A = dm12_demo().A
    g = pseudospectra_grid(A, (-10, 10), (-15, 15), 101)
    assert np.any(g.values[g.points.real > 0] < 1e-4)
    assert pseudo_abscissa_estimate(g, 1e-4) > 0


@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_stone_bound(toeplitz8, eps):
    assert stone_bound_check(toeplitz8, pseudospectra_grid(toeplitz8, eps_levels=(eps,)), eps)
    J = np.eye(8, k=1)
    assert stone_bound_check(J, pseudospectra_grid(J, eps_levels=(eps,)), eps)


def test_transient_envelope_basics():
    A = np.diag([-1.0, -2.0])
    env = transient_envelope_continuous(A, np.linspace(0, 3, 7))
    assert env[0] == 1 and np.all(np.diff(env) <= 0)
    with pytest.raises(InputError):
        transient_envelope_continuous(A, [1.0, 0.5])


def test_transient_slope_matches_omega(toeplitz8):
    h = 1e-6
    slope = (transient_envelope_continuous(toeplitz8, [h])[0] - 1) / h
    assert slope == pytest.approx(numerical_abscissa(toeplitz8), rel=1e-3)


def test_transient_lower_bound():
    assert transient_lower_bound(None, 0.1, -1.0) <= 0
    assert transient_lower_bound(None, 0.2, 1.0) == pytest.approx(transient_lower_bound(None, 0.1, 1.0) / 2)
    with pytest.raises(InputError):
        transient_lower_bound(None, 0.0, 1.0)


def test_dm12_envelope_exceeds_pseudospectral_bound():
    A = dm12_demo().A
    g = pseudospectra_grid(A, (-10, 10), (-15, 15), 101)
    bound = transient_lower_bound(A, 1e-4, pseudo_abscissa_estimate(g, 1e-4))
    env = transient_envelope_continuous(A, np.linspace(0, 1, 201))
    assert bound > 1 and env.max() > bound


def test_discrete_envelope():
    A = geometric_superdiag(32)
    env = transient_envelope_discrete(A, 40)
    assert env[0] == 1
    assert env.max() > 1 and np.abs(np.linalg.eigvals(A)).max() < 1
    d = transient_envelope_discrete(np.diag([0.5, -0.9]), 10)
    assert np.all(np.diff(d) <= 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**31 - 1))
def test_eigenvalues_in_numerical_range(n, seed):
    A = nonnormal(np.random.default_rng(seed), n)
    assert np.all(in_numerical_range(A, np.linalg.eigvals(A)))
    s = spectral_summary(A)
    if s.omega >= 0:
        assert s.nu >= s.omega - 1e-12
