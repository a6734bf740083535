import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steklov_lab import constants_estimator as ce
from steklov_lab import hyp_trig, prob_bounds
from steklov_lab.kernels import levelset_measure
from steklov_lab.steklov_solver import steklov_spectrum
from steklov_lab.surface_builder import build_disk_mesh, build_mesh, hexagon_vertices, minkowski, surface_from_slots

from .conftest import S04


def geodesic(systems, prefix):
    return [s for s in systems if s.description.startswith(prefix) and "+offset" not in s.description]


# -- offset quotient ---------------------------------------------------------


@settings(max_examples=10_000, deadline=None)
@given(
    st.floats(0.01, 50), st.floats(0.01, 50), st.floats(0, 10), st.floats(0, 1),
)
def test_offset_quotient_bound(length, area, d, frac):
    H = frac * length / area
    assert ce.offset_quotient_holds(length, area, d, H)


def test_offset_quotient_bound_vectorized():
    # direct evaluation of the inequality on 10^4 random samples, independent of offset_quotient_holds
    rng = np.random.default_rng(3)
    n = 10_000
    length, area = rng.uniform(0.01, 50, n), rng.uniform(0.01, 50, n)
    d = rng.uniform(0, 10, n)
    H = rng.uniform(0, 1, n) * length / area
    lhs = length * np.cosh(d) / (area + length * np.sinh(d))
    assert np.all(lhs >= H / (H + 1) * (1 - 1e-14))


def test_offset_quotient_needs_admissible_H():
    with pytest.raises(ce.ConstantsError):
        ce.offset_quotient_holds(1.0, 1.0, 0.5, 2.0)


# -- candidates ------------------------------------------------------------------


def test_offset_identity_and_formulas(pants_surface):
    systems = ce.enumerate_candidates(*pants_surface)
    base = next(s for s in systems if s.is_geodesic)
    assert ce.offset_system(base, 0.0) is base
    d = 0.3
    off = ce.offset_system(base, d)
    assert off.total_length == pytest.approx(base.total_length * math.cosh(d), rel=1e-14)
    # the side that started smaller gains l sinh d, whichever side it is
    grown = off.area if base.area <= base.total_area / 2 else off.total_area - off.area
    assert grown == pytest.approx(base.area_split[0] + base.total_length * math.sinh(d), rel=1e-14)


def test_tube_measured_on_mesh(pants_surface):
    """Area and length of the tube around one cuff agree with l sinh t and l cosh t."""
    mesh = build_mesh(*pants_surface, 0.05)
    P = hexagon_vertices(2, 2, 2)
    n = np.cross(P[0], P[1]) * np.array([1.0, 1.0, -1.0])
    n = n / math.sqrt(minkowski(n, n))
    # every face lies in a chart of the one hexagon pair, so one normal serves all
    dist = np.arcsinh(np.abs(minkowski(mesh.coords, n)))
    for t in (0.2, 0.4, 0.6, 0.8):
        area_out, cut = levelset_measure(mesh.face_lengths, -dist, np.array([-t]))
        assert area_out[0] == pytest.approx(2 * math.sinh(t), rel=0.02)
        assert cut[0] == pytest.approx(2 * math.cosh(t), rel=0.02)


def test_one_holed_torus_candidates(s11_surface):
    systems = ce.enumerate_candidates(*s11_surface)
    cells = geodesic(systems, "cells")
    arcs = geodesic(systems, "selfarc")
    # brute force: each complex is connected, so every proper subset holding cell 0 is a cut
    assert len(cells) == 2 ** (2 - 1) - 1
    assert len(arcs) == 2 ** (2 - 1) - 1
    b = hyp_trig.pants_seams(2, 2, 2)
    # twist 0 glues each half of the cuff to the other hexagon
    assert cells[0].total_length == pytest.approx(sum(b) + 2.0, rel=1e-14)
    d = hyp_trig.collar_width(2, 2, 2).width
    kinds = sorted(s.kind for s in arcs[0].segments)
    assert kinds == [ce.CLOSED, ce.ARC]
    assert arcs[0].total_length == pytest.approx(2 * d + 2.0, rel=1e-14)


def test_half_twist_moves_the_cuff():
    g, c = surface_from_slots(1, [[[0, 0], [0, 1], 2.0, 1.0]], [[0, 2, 2.0]])
    cells = geodesic(ce.enumerate_candidates(g, c), "cells")
    assert cells[0].total_length == pytest.approx(sum(hyp_trig.pants_seams(2, 2, 2)), rel=1e-14)


def test_four_holed_sphere_candidate_count():
    g, c = surface_from_slots(*S04)
    systems = ce.enumerate_candidates(g, c)
    # 4 hexagon cells, and for each of 4 boundary slots two pieces plus the other pants
    assert len(geodesic(systems, "cells")) == 2**3 - 1
    assert len(geodesic(systems, "selfarc")) == 4 * (2**2 - 1)


def test_three_seam_halving(pants_surface):
    systems = ce.enumerate_candidates(*pants_surface)
    half = next(s for s in systems if s.description == "cells{hex0a}")
    b = hyp_trig.pants_seams(2, 2, 2)[0]
    assert half.area == pytest.approx(math.pi)
    assert half.exterior == pytest.approx(3.0)
    # quotient: three seams over half of the total boundary
    assert half.jammes_value() == pytest.approx(3 * b / 3, rel=1e-14)
    assert half.cheeger_value() == pytest.approx(3 * b / math.pi, rel=1e-14)


def test_equal_halves_use_either_side():
    s = ce.CurveSystem((ce.Segment(ce.CLOSED, 2.0),), 3.0, 6.0, 1.0, 1.0, True, True)
    assert s.cheeger_value() == pytest.approx(2.0 / 3.0)


def test_report_consistency(pants_surface, pants_mesh):
    report = ce.estimate_constants(ce.enumerate_candidates(*pants_surface, pants_mesh), pants_mesh)
    assert report.geodesic_lower_consistent()
    assert report.h_C_upper >= report.geodesic_lower
    assert report.H_certified is False
    assert report.h_J_upper <= hyp_trig.pants_seams(2, 2, 2)[0] + 1e-12


def test_closed_surface_has_no_jammes_candidate():
    g, c = surface_from_slots(2, [[[0, 0], [1, 0], 2, 0], [[0, 1], [1, 1], 2, 0], [[0, 2], [1, 2], 2, 0]], [])
    with pytest.raises(ce.ConstantsError):
        ce.estimate_constants(ce.enumerate_candidates(g, c))


def test_mesh_topology_mismatch(pants_surface, s11_mesh):
    with pytest.raises(ce.ConstantsError):
        ce.enumerate_candidates(*pants_surface, s11_mesh)


# -- level sets ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def disk():
    mesh = build_disk_mesh(1.0, 0.05)
    return mesh, steklov_spectrum(mesh, 2)


def test_superlevel_areas_shrink(disk):
    mesh, spec = disk
    f = spec.eigenfunctions[:, 1]
    levels = np.linspace(f.min(), f.max(), 101)
    sw = ce.sweep_function(mesh, f, levels)
    assert np.all(np.diff(sw.area) <= 1e-12)
    # t at the minimum gives everything
    assert sw.area[0] == pytest.approx(mesh.area, rel=1e-12)
    # t = 0 splits the disk in half
    zero = ce.sweep_function(mesh, f, np.array([0.0]))
    assert zero.area[0] == pytest.approx(mesh.area / 2, rel=0.01)


def test_disk_level_sets_give_half_disk_quotient(disk):
    mesh, spec = disk
    merged, _ = ce.levelset_sweep(spec, mesh)
    # the half disk: diameter over half of the circle
    assert merged.h_J_upper == pytest.approx(2 / (math.pi * math.sinh(1)), rel=0.02)
    assert merged.sources["h_J"] == ce.LEVEL_SET
    slack = ce.jammes_check(spec.sigma1, merged, warn=False)
    assert math.isfinite(slack)


def test_levelset_merge_never_worsens(pants_surface, pants_mesh):
    report = ce.estimate_constants(ce.enumerate_candidates(*pants_surface, pants_mesh), pants_mesh)
    merged, sweep = ce.levelset_sweep(steklov_spectrum(pants_mesh, 2), pants_mesh, report)
    assert merged.h_C_upper <= report.h_C_upper
    assert merged.h_J_upper <= report.h_J_upper
    assert np.all(np.diff(sweep.area) <= 1e-12)


def test_complement_check_matches_components(disk):
    mesh, spec = disk
    f = spec.eigenfunctions[:, 1]
    # every sublevel set of a harmonic function touches the boundary
    assert ce.complement_check(mesh, f, np.linspace(f.min(), f.max(), 20)).all()
    # distance to the centre: the sublevel set is an interior disk
    r = np.zeros(mesh.n_vertices)
    r[mesh.faces.ravel()] = np.arccosh(np.maximum(mesh.coords[..., 2].ravel(), 1.0))
    assert not ce.complement_check(mesh, r, np.array([0.5]))[0]


# -- Jammes inequality and the large-genus calculator ----------------------------------


def test_jammes_slack_sign_and_scaling():
    report = ce.ConstantsReport(h_C_upper=1.0, h_J_upper=2.0, H_upper=1.0)
    assert ce.jammes_check(1.0, report) == pytest.approx(0.5)
    double = ce.ConstantsReport(h_C_upper=2.0, h_J_upper=4.0, H_upper=1.0)
    assert 1.0 - ce.jammes_check(1.0, double, warn=False) == pytest.approx(4 * (1.0 - ce.jammes_check(1.0, report)))
    with pytest.warns(ce.NegativeSlackWarning):
        assert ce.jammes_check(0.1, report) < 0
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ce.jammes_check(0.1, report, warn=False)


def test_assembled_constant():
    # h_J > c and h_C > c1 give sigma_1 >= c c1 / 4
    c, c1 = 0.4, 0.09
    report = ce.ConstantsReport(h_C_upper=c1, h_J_upper=c, H_upper=c1)
    assert 0.25 * report.h_C_upper * report.h_J_upper == pytest.approx(float(prob_bounds.assembled_constant(c, c1)))


def test_case_calculator_example():
    out = ce.theorem1_case_calculator(math.exp(10), 0.1, widths=[4.0, 5.0], boundary_length=19.5)
    assert out["half_collar_width"] == pytest.approx(4.0)
    assert out["boundary_window"] == pytest.approx((19.0, 20.0))
    assert out["jammes_bound"] == pytest.approx(0.4)
    assert out["part2_factor"] == pytest.approx(2.8 / 0.8)
    assert out["widths_ok"] and out["boundary_in_window"]


def test_case_calculator_small_eps_limit():
    out = ce.theorem1_case_calculator(1e6, 1e-9)
    assert out["jammes_bound"] == pytest.approx(0.5, abs=1e-8)
    assert out["cheeger_threshold"] == pytest.approx(0.0993570, abs=5e-7)


def test_case_calculator_monotone_in_eps():
    keys = ("jammes_bound", "comparison_constant", "cheeger_bound")
    rows = [ce.theorem1_case_calculator(1e8, e) for e in np.linspace(0.01, 0.24, 30)]
    for k in keys:
        vals = [r[k] for r in rows]
        assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:])), k


def test_case_calculator_rejects_bad_eps():
    with pytest.raises(ce.ConstantsError):
        ce.theorem1_case_calculator(100, 0.3)


def test_threshold_agrees_across_modules():
    a = prob_bounds.significant(ce.cheeger_threshold(40), 30)
    b = prob_bounds.significant(prob_bounds.threshold_constants(40)["cheeger_threshold"], 30)
    assert a == b
    with mpmath.workdps(60):
        ln2 = mpmath.log(2)
        assert a == prob_bounds.significant(ln2 / (2 * mpmath.pi + ln2), 30)
