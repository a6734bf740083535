import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steklov_lab.steklov_solver import (
    SteklovError,
    boundary_mass_matrix,
    convergence_orders,
    disk_steklov_exact,
    normalized_sigma1,
    orthogonality_residual,
    rayleigh_residual,
    steklov_spectrum,
    stiffness_matrix,
    verify_upper_bounds,
)
from steklov_lab.surface_builder import build_disk_mesh, build_mesh, surface_from_slots


def disk_oracle(R, m):
    """Separation of variables: harmonic extension of cos(m t) is (tanh(r/2)/tanh(R/2))^m cos(m t)."""
    # d/dr of tanh(r/2)^m at R divided by tanh(R/2)^m
    t = math.tanh(R / 2)
    return m * (1 - t * t) / (2 * t)


@pytest.fixture(scope="module")
def disk_levels():
    return [steklov_spectrum(build_disk_mesh(1.0, 1.0, level=k), 4) for k in (2, 3, 4, 5)]


def test_disk_oracle_matches_closed_form():
    for R in (0.3, 1.0, 2.5):
        for m in (1, 2, 3):
            assert disk_oracle(R, m) == pytest.approx(disk_steklov_exact(R, m), rel=1e-14)


def test_hyperbolic_disk(disk_levels):
    spec = disk_levels[-1]
    exact = disk_oracle(1.0, 1)
    assert abs(exact - 0.85092) < 5e-6
    assert spec.sigma1 == pytest.approx(exact, rel=0.01)
    assert spec.normalized_first == pytest.approx(2 * math.pi, rel=0.01)
    # sigma_1 and sigma_2 form the m = 1 pair, sigma_3 and sigma_4 the m = 2 pair
    assert spec.eigenvalues[2] == pytest.approx(exact, rel=0.01)
    assert spec.eigenvalues[3:5] == pytest.approx([2 * exact] * 2, rel=0.01)


def test_disk_convergence_order(disk_levels):
    exact = disk_oracle(1.0, 1)
    orders = convergence_orders([s.sigma1 - exact for s in disk_levels])
    assert min(orders) >= 1.8
    # successive errors shrink by about four
    errs = [s.sigma1 - exact for s in disk_levels]
    assert all(0.2 < b / a < 0.3 for a, b in zip(errs, errs[1:]))


def test_disk_resolution_005():
    spec = steklov_spectrum(build_disk_mesh(1.0, 0.05), 3)
    assert spec.sigma1 == pytest.approx(1 / math.sinh(1), rel=0.01)


def test_flat_disk_weinstock():
    spec = steklov_spectrum(build_disk_mesh(1.0, 0.05, geometry="euclidean"), 4)
    assert spec.eigenvalues[1:5] == pytest.approx([1, 1, 2, 2], rel=0.01)
    st_ = spec.normalized_first
    assert st_ == pytest.approx(2 * math.pi, rel=0.01)
    report = verify_upper_bounds(st_, 0, 1)
    assert report.passes_genus_components
    assert spec.clusters()[:3] == [[0], [1, 2], [3, 4]]


def test_constants_are_annihilated(pants_mesh):
    K = stiffness_matrix(pants_mesh)
    assert np.abs(K @ np.ones(pants_mesh.n_vertices)).max() < 1e-10
    spec = steklov_spectrum(pants_mesh, 3)
    assert abs(spec.eigenvalues[0]) < 1e-8 * spec.eigenvalues[1]
    assert not spec.under_resolved
    M = boundary_mass_matrix(pants_mesh)
    assert np.ones(pants_mesh.n_vertices) @ M @ np.ones(pants_mesh.n_vertices) == pytest.approx(6.0, rel=1e-9)


def test_residuals(pants_mesh, s11_mesh):
    for mesh in (pants_mesh, s11_mesh):
        spec = steklov_spectrum(mesh, 5)
        assert rayleigh_residual(spec) < 1e-8
        assert orthogonality_residual(spec) < 1e-8


def test_eigenfunctions_are_discrete_harmonic(pants_mesh):
    spec = steklov_spectrum(pants_mesh, 3)
    K = stiffness_matrix(pants_mesh)
    interior = np.setdiff1d(np.arange(pants_mesh.n_vertices), spec.boundary_nodes)
    r = (K @ spec.eigenfunctions)[interior]
    assert np.abs(r).max() < 1e-9 * np.abs(spec.eigenfunctions).max()


def test_deterministic_signs(pants_mesh):
    a = steklov_spectrum(pants_mesh, 3)
    b = steklov_spectrum(pants_mesh, 3)
    assert np.array_equal(a.eigenfunctions, b.eigenfunctions)


def test_sigma1_decreases_with_radius():
    # sigma_1 = 1 / sinh R
    vals = [steklov_spectrum(build_disk_mesh(R, 0.1), 1).sigma1 for R in (0.5, 1.0, 1.5, 2.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_normalized_is_scale_free():
    for R in (0.5, 1.5):
        spec = steklov_spectrum(build_disk_mesh(R, 0.1), 1)
        assert spec.normalized_first == pytest.approx(2 * math.pi, rel=0.01)


def test_normalized_arithmetic():
    class Fake:
        eigenvalues = np.array([0.0, 0.5])
        boundary_length = 10.0

    assert normalized_sigma1(Fake()) == 5.0


def test_pants_bound(pants_mesh):
    spec = steklov_spectrum(pants_mesh, 5)
    report = verify_upper_bounds(spec.normalized_first, 0, 3)
    assert report.bound_genus_components == pytest.approx(6 * math.pi)
    assert report.ok and spec.normalized_first < 6 * math.pi


@settings(max_examples=200)
@given(st.integers(0, 30), st.integers(1, 200))
def test_bound_crossover(g, k):
    report = verify_upper_bounds(1.0, g, k)
    assert (report.sharper == "genus_only") == (k > 3 * g + 4)


def test_errors(pants_mesh):
    closed = build_mesh(*surface_from_slots(2, [[[0, 0], [1, 0], 2, 0], [[0, 1], [1, 1], 2, 0], [[0, 2], [1, 2], 2, 0]], []), 0.2)
    with pytest.raises(SteklovError, match="boundary"):
        steklov_spectrum(closed)
    with pytest.raises(SteklovError):
        steklov_spectrum(pants_mesh, 0)
    with pytest.raises(SteklovError):
        steklov_spectrum(pants_mesh, 10**6)
    with pytest.raises(SteklovError):
        verify_upper_bounds(1.0, 0, 0)
