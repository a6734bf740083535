"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Tolerances are written out as literals here and checked against the values
the library reports, so a change to a module constant cannot loosen a check
silently.
"""

import math
import time

import mpmath
import pytest

from steklov_lab import hyp_trig, verification


@pytest.fixture(scope="module")
def corpus():
    return verification.run_corpus()


@pytest.fixture
def report(capsys):
    def show(result):
        with capsys.disabled():
            print("\n" + result.line())

    return show


def test_tolerances_pinned():
    v = verification
    assert (v.DISK_RTOL, v.DISK_RESOLUTION, v.MIN_ORDER, v.DISK_SECONDS) == (0.01, 0.05, 1.8, 60.0)
    assert (v.MIN_CORPUS, v.BOUND_SLACK, v.CORPUS_SECONDS) == (10, 0.05, 600.0)
    assert (v.HEX_SAMPLES, v.HEX_RANGE, v.HEX_TOL) == (100, (0.1, 20.0), 1e-10)
    assert v.AREA_RTOL == 0.01
    assert v.VOLUME_SECONDS == 300.0
    assert v.OFFSET_SAMPLES == 10_000
    assert (v.DECAY_FROM, v.DECAY_THRESHOLD, v.DECAY_BY) == (1e4, 1e-3, 1e9)
    assert v.DIGITS >= 30


def test_01_disk_oracle(report):
    r = verification.check_disk_oracle()
    report(r)
    s = r.summary
    assert abs(1 / math.sinh(1) - 0.85092) < 5e-6
    assert s["exact"] == pytest.approx(1 / math.sinh(1), rel=1e-14)
    assert s["sigma1_rel_err"] <= 0.01
    assert s["sigma_tilde_rel_err"] <= 0.01
    assert s["min_order"] >= 1.8
    assert s["seconds"] < 60
    assert r.passed


def test_02_flat_disk(report):
    r = verification.check_flat_disk()
    report(r)
    assert r.summary["rel_err"] <= 0.01
    assert r.summary["bound"] == pytest.approx(2 * math.pi)
    assert r.passed


def test_03_upper_bounds(corpus, report):
    runs, elapsed = corpus
    r = verification.check_upper_bounds(runs, elapsed)
    report(r)
    assert len(runs) >= 10
    assert {(x.genus, x.n_boundary) for x in runs} >= {(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)}
    for row in r.rows:
        g, n = row["g"], row["n"]
        assert row["bound_genus_components"] == pytest.approx(2 * math.pi * (g + n))
        assert row["bound_genus_only"] == pytest.approx(8 * math.pi * (g + 1))
        assert row["relative_slack"] >= 0.05, row["surface"]
    assert elapsed < 600
    assert r.passed


def test_04_hexagons(report):
    r = verification.check_hexagons()
    report(r)
    s = r.summary
    assert s["samples"] == 100
    assert max(s["closure"], s["width_err"], s["relation_err"]) <= 1e-10
    assert s["collar_gap"] <= s["M"] == hyp_trig.COLLAR_GAP_BOUND
    assert r.passed


def test_05_gauss_bonnet(corpus, report):
    runs, _ = corpus
    r = verification.check_gauss_bonnet(runs)
    report(r)
    assert all(abs(x.area_rel_err) <= 0.01 for x in runs)
    assert r.passed


def test_06_volume_growth(report):
    t0 = time.perf_counter()
    r = verification.check_volume_lemmas(12)
    report(r)
    s = r.summary
    assert s["budget"] == 12
    assert s["bound_violations"] == 0
    assert s["ratio_monotone"]
    assert s["dual_mismatches"] == 0
    assert time.perf_counter() - t0 < 300
    assert r.passed


def test_07_sum_window(report):
    r = verification.check_sum_window(12)
    report(r)
    assert r.summary["window"] == (0.01, 0.2)
    combos = {(row["b"], row["k"], row["C"]) for row in r.rows}
    assert combos == {(b, k, C) for b in (0, 1) for k in (1, 2) for C in (0.0, math.log(2))}
    assert all(0.01 <= row["ratio"] <= 0.2 for row in r.rows)
    assert r.summary["parity_checked"] > 0
    assert r.passed


def test_08_offset_quotient(report):
    r = verification.check_offset_quotient()
    report(r)
    assert r.summary["samples"] == 10_000
    assert r.summary["violations"] == 0
    assert r.passed


def test_09_jammes(corpus, report):
    runs, _ = corpus
    r = verification.check_jammes(runs)
    report(r)
    for x in runs:
        # a negative coarse slack is only accepted once two finer meshes clear it
        assert x.jammes_slack >= 0 or len(x.jammes_resolutions) == 3, x.name
        assert x.jammes_slack >= 0, x.name
    assert r.passed


def test_10_decay(report):
    r = verification.check_decay(eps=0.1)
    report(r)
    by_label = {}
    for row in r.rows:
        by_label.setdefault(row["label"], []).append((row["g"], row["value"]))
    assert set(by_label) == {"pair_collar", "pants_collar", "multicurve"}
    for label, samples in by_label.items():
        tail = [v for g, v in samples if g >= 1e4]
        assert all(b < a for a, b in zip(tail, tail[1:])), f"{label} not decreasing beyond 1e4"
        assert any(v < 1e-3 for g, v in samples if g <= 1e9), f"{label} not below 1e-3 by 1e9"
    assert r.summary["reindex_ok"] and r.summary["reindex_pairs"] > 0
    assert r.passed


def test_11_thresholds(report):
    r = verification.check_thresholds(30)
    report(r)
    with mpmath.workdps(60):
        ln2 = mpmath.log(2)
        want = {
            "c1_max": ln2 / (2 * mpmath.pi),
            "cheeger_threshold": ln2 / (2 * mpmath.pi + ln2),
            "assembled_C": ln2 / (2 * mpmath.pi + ln2) / 8,
        }
        for k, v in want.items():
            assert r.summary[k] == mpmath.nstr(v, 30, min_fixed=-5, max_fixed=5), k
            assert len(r.summary[k].replace("0.", "", 1).lstrip("0")) >= 30
    assert r.passed
