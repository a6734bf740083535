"""The acceptance checks, shared by ``steklov-lab verify-all`` and the test suite.

Each check returns a :class:`CheckResult` carrying the verdict, the measured
numbers and table rows for CSV export.  Tolerances live in module constants so
callers can report them next to the measurements.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from importlib import resources

import mpmath
import numpy as np

from . import constants_estimator as ce
from . import hyp_trig, prob_bounds, wp_volumes
from .steklov_solver import (
    convergence_orders,
    disk_steklov_exact,
    steklov_spectrum,
    verify_upper_bounds,
)
from .surface_builder import SurfaceSpec, build_disk_mesh, parse_surface_spec

DISK_RTOL = 0.01
DISK_RESOLUTION = 0.05
DISK_LEVELS = (2, 3, 4, 5)
MIN_ORDER = 1.8
DISK_SECONDS = 60.0
CORPUS_SECONDS = 600.0
VOLUME_SECONDS = 300.0
MIN_CORPUS = 10
BOUND_SLACK = 0.05
COARSE, FINE = 0.1, 0.05
HEX_SAMPLES = 100
HEX_RANGE = (0.1, 20.0)
HEX_TOL = 1e-10
AREA_RTOL = 0.01
SUM_WINDOW = (0.01, 0.2)
OFFSET_SAMPLES = 10_000
DECAY_FROM = 1e4
DECAY_THRESHOLD = 1e-3
DECAY_BY = 1e9
DIGITS = 30
SEED = 20240611


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    summary: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    curves: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = ", ".join(f"{k}={_fmt(v)}" for k, v in self.summary.items())
        return f"[{status}] {self.number:2d}. {self.title}: {detail}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def corpus_specs() -> list[SurfaceSpec]:
    """The bundled surface corpus, sorted by name."""
    root = resources.files("steklov_lab") / "corpus"
    out = []
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out.append(parse_surface_spec(entry.read_text(encoding="utf-8"), name=entry.name[:-5]))
    return out


def pants_corpus() -> list[SurfaceSpec]:
    return [s for s in corpus_specs() if s.disk is None]


# -- 1, 2: disks -------------------------------------------------------------


def check_disk_oracle() -> CheckResult:
    t0 = time.perf_counter()
    exact = disk_steklov_exact(1.0, 1)
    mesh = build_disk_mesh(1.0, DISK_RESOLUTION)
    spec = steklov_spectrum(mesh, 3)
    sigma_err = abs(spec.sigma1 / exact - 1)
    tilde_err = abs(spec.normalized_first / (2 * math.pi) - 1)
    errors, rows = [], []
    for level in DISK_LEVELS:
        m = build_disk_mesh(1.0, 1.0, level=level)
        s = steklov_spectrum(m, 1)
        errors.append(s.sigma1 - exact)
        rows.append({"level": level, "max_edge": m.max_edge, "sigma1": s.sigma1, "error": s.sigma1 - exact})
    orders = convergence_orders(errors)
    elapsed = time.perf_counter() - t0
    ok = sigma_err <= DISK_RTOL and tilde_err <= DISK_RTOL and min(orders) >= MIN_ORDER and elapsed < DISK_SECONDS
    return CheckResult(
        1, "hyperbolic disk oracle", ok,
        {"sigma1": spec.sigma1, "exact": exact, "sigma1_rel_err": sigma_err,
         "sigma_tilde_rel_err": tilde_err, "min_order": min(orders), "seconds": elapsed},
        rows,
    )


def check_flat_disk() -> CheckResult:
    mesh = build_disk_mesh(1.0, DISK_RESOLUTION, geometry="euclidean")
    spec = steklov_spectrum(mesh, 3)
    st = spec.normalized_first
    bounds = verify_upper_bounds(st, 0, 1)
    err = abs(st / (2 * math.pi) - 1)
    ok = err <= DISK_RTOL and bounds.passes_genus_components
    return CheckResult(
        2, "flat disk meets the genus-components bound", ok,
        {"sigma_tilde": st, "bound": bounds.bound_genus_components, "rel_err": err},
        [{"sigma_tilde": st, "bound": bounds.bound_genus_components, "rel_err": err}],
    )


# -- 3, 5, 9: surface corpus ---------------------------------------------------


@dataclass
class CorpusRun:
    name: str
    genus: int
    n_boundary: int
    sigma_tilde_coarse: float
    sigma_tilde_fine: float
    area_rel_err: float
    jammes_slack: float
    jammes_resolutions: tuple
    geodesic_lower_consistent: bool


def _jammes_slack(spec: SurfaceSpec, resolution: float) -> float:
    mesh = spec.build(resolution)
    s = steklov_spectrum(mesh, 3)
    rep = ce.estimate_constants(ce.enumerate_candidates(spec.graph, spec.coords, mesh), mesh)
    merged, _ = ce.levelset_sweep(s, mesh, rep)
    return ce.jammes_check(s.sigma1, merged, warn=False), merged


def run_corpus(specs=None) -> tuple[list[CorpusRun], float]:
    t0 = time.perf_counter()
    runs = []
    for spec in specs if specs is not None else pants_corpus():
        coarse = spec.build(COARSE)
        fine = spec.build(FINE)
        st_c = steklov_spectrum(coarse, 3).normalized_first
        st_f = steklov_spectrum(fine, 3).normalized_first
        slack, merged = _jammes_slack(spec, COARSE)
        used = (COARSE,)
        if slack < 0:
            # a negative slack only counts once two finer meshes reproduce it
            finer = [_jammes_slack(spec, r)[0] for r in (COARSE / 2, COARSE / 4)]
            used = (COARSE, COARSE / 2, COARSE / 4)
            slack = max(finer)
        runs.append(CorpusRun(
            spec.name, coarse.genus, coarse.n_boundary, st_c, st_f,
            coarse.area / coarse.gauss_bonnet_area() - 1, slack, used, merged.geodesic_lower_consistent(),
        ))
    return runs, time.perf_counter() - t0


def check_upper_bounds(runs, elapsed) -> CheckResult:
    rows, ok = [], len(runs) >= MIN_CORPUS and elapsed < CORPUS_SECONDS
    worst = math.inf
    for r in runs:
        allowance = abs(r.sigma_tilde_coarse - r.sigma_tilde_fine)
        b = verify_upper_bounds(r.sigma_tilde_fine, r.genus, r.n_boundary)
        bound = min(b.bound_genus_components, b.bound_genus_only)
        rel = (bound - r.sigma_tilde_fine - allowance) / bound
        worst = min(worst, rel)
        passed = b.ok and rel >= BOUND_SLACK
        ok &= passed
        rows.append({"surface": r.name, "g": r.genus, "n": r.n_boundary, "sigma_tilde": r.sigma_tilde_fine,
                     "allowance": allowance, "bound_genus_components": b.bound_genus_components,
                     "bound_genus_only": b.bound_genus_only, "relative_slack": rel, "pass": passed})
    return CheckResult(3, "upper bounds on the corpus", ok,
                       {"surfaces": len(runs), "worst_relative_slack": worst, "seconds": elapsed}, rows)


def check_gauss_bonnet(runs) -> CheckResult:
    rows = [{"surface": r.name, "area_rel_err": r.area_rel_err} for r in runs]
    worst = max(abs(r.area_rel_err) for r in runs)
    return CheckResult(5, "mesh areas match Gauss-Bonnet", worst <= AREA_RTOL and bool(runs),
                       {"surfaces": len(runs), "worst_rel_err": worst}, rows)


def check_jammes(runs) -> CheckResult:
    rows = [{"surface": r.name, "jammes_slack": r.jammes_slack,
             "resolutions": " ".join(map(str, r.jammes_resolutions)),
             "geodesic_lower_consistent": r.geodesic_lower_consistent} for r in runs]
    worst = min(r.jammes_slack for r in runs)
    ok = worst >= 0 and all(r.geodesic_lower_consistent for r in runs)
    return CheckResult(9, "Jammes inequality slack on the corpus", ok,
                       {"surfaces": len(runs), "worst_slack": worst}, rows)


# -- 4: hexagons ---------------------------------------------------------------


def hyperboloid_hexagon(sides, dps: int = 60):
    """Walk a right-angled hexagon in the hyperboloid model with mpmath.

    Returns the closure residual (largest deviation of the final frame from
    the initial one) and ``cosh`` of the distance between the geodesics
    carrying sides 0 and 3.
    """
    with mpmath.workdps(dps):
        def ip(x, y):
            return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]

        p = [mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)]
        v = [mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0)]
        n = [mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(0)]
        start = (p, v, n)
        normals = []
        for s in sides:
            s = mpmath.mpf(s)
            ch, sh = mpmath.cosh(s), mpmath.sinh(s)
            normals.append(n)
            p, v = [ch * a + sh * b for a, b in zip(p, v)], [sh * a + ch * b for a, b in zip(p, v)]
            v, n = n, [-x for x in v]
        residual = max(abs(a - b) for x, y in zip((p, v, n), start) for a, b in zip(x, y))
        cosh_d = abs(ip(normals[0], normals[3]))
        return float(residual), cosh_d


def check_hexagons(samples: int = HEX_SAMPLES, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed)
    triples = rng.uniform(*HEX_RANGE, size=(samples, 3))
    worst_close = worst_d = worst_rel = 0.0
    rows = []
    for l1, l2, l3 in triples:
        hx = hyp_trig.hexagon(l1, l2, l3)
        # closure is measured relative to the size of the coordinates reached
        res, cosh_d = hyperboloid_hexagon(hx.sides)
        scale = math.exp(sum(hx.sides))
        col = hyp_trig.collar_width(l1, l2, l3)
        d_oracle = float(mpmath.acosh(cosh_d))
        err_d = abs(col.width - d_oracle) / max(d_oracle, 1.0)
        alt = math.sinh(l2 / 2) * math.sinh(col.seam)
        rel = abs(alt - float(cosh_d)) / float(cosh_d)
        worst_close = max(worst_close, res / scale)
        worst_d = max(worst_d, err_d)
        worst_rel = max(worst_rel, rel)
        rows.append({"l1": l1, "l2": l2, "l3": l3, "closure": res / scale, "width": col.width,
                     "width_err": err_d, "relation_err": rel})
    gap = hyp_trig.collar_gap_sweep(num=20)
    ok = max(worst_close, worst_d, worst_rel) <= HEX_TOL and gap <= hyp_trig.COLLAR_GAP_BOUND
    return CheckResult(4, "hexagon and collar identities", ok,
                       {"samples": samples, "closure": worst_close, "width_err": worst_d,
                        "relation_err": worst_rel, "collar_gap": gap, "M": hyp_trig.COLLAR_GAP_BOUND}, rows)


# -- 6, 7: volumes ---------------------------------------------------------------


def check_volume_lemmas(budget: int = wp_volumes.DEFAULT_BUDGET) -> CheckResult:
    t0 = time.perf_counter()
    rep = wp_volumes.check_volume_lemmas(budget)
    elapsed = time.perf_counter() - t0
    rows = [{"g": g, "n": n, "ratio_over_4pi2": float(q)} for g, n, _r, q in rep.ratio_rows]
    ok = rep.ok and elapsed < VOLUME_SECONDS
    return CheckResult(6, "volume lemmas", ok,
                       {"budget": budget, "pairs": len(rep.checked_pairs),
                        "bound_violations": len(rep.growth_violations) + len(rep.shift_violations)
                        + len(rep.sinh_bound_violations),
                        "ratio_monotone": all(rep.ratio_monotone.values()),
                        "dual_mismatches": len(rep.dual_path_mismatches), "seconds": elapsed}, rows)


def check_sum_window(budget: int = wp_volumes.DEFAULT_BUDGET) -> CheckResult:
    table = wp_volumes.default_table(budget)
    rows, ok = [], True
    lo, hi = SUM_WINDOW
    for b in (0, 1):
        for k in (1, 2):
            for C in (0, mpmath.log(2)):
                # the split sum is empty until g + 1 - k >= 2
                g = k + 1
                while table.in_budget(g, 0):
                    ratio = float(wp_volumes.sum_asymptotics(b, k, C, g, table)[2])
                    inside = lo <= ratio <= hi
                    ok &= inside
                    rows.append({"b": b, "k": k, "C": float(C), "g": g, "ratio": ratio, "inside": inside})
                    g += 1
    parity = []
    k = 1
    while True:
        g, n = wp_volumes.tilde_w(k)
        if not table.in_budget(g, n):
            break
        expected = (k // 2, 2) if k % 2 == 0 else ((k + 1) // 2, 1)
        same = (g, n) == expected and wp_volumes.tilde_w_value(k, table) == table.value(*expected)
        parity.append(same)
        k += 1
    ok = ok and bool(rows) and all(parity)
    ratios = [r["ratio"] for r in rows]
    return CheckResult(7, "split-sum ratios and W-tilde parity", ok,
                       {"window": SUM_WINDOW, "min_ratio": min(ratios), "max_ratio": max(ratios),
                        "parity_checked": len(parity)}, rows)


# -- 8: offset quotient -----------------------------------------------------------


def offset_samples(n: int = OFFSET_SAMPLES, seed: int = SEED) -> np.ndarray:
    """Random ``(length, area, d, H)`` with ``H <= length / area``."""
    rng = np.random.default_rng(seed)
    length = rng.uniform(0.01, 50.0, n)
    area = rng.uniform(0.01, 50.0, n)
    d = rng.uniform(0.0, 10.0, n)
    H = rng.uniform(0.0, 1.0, n) * length / area
    return np.column_stack([length, area, d, H])


def check_offset_quotient(n: int = OFFSET_SAMPLES) -> CheckResult:
    samples = offset_samples(n)
    bad = [tuple(s) for s in samples if not ce.offset_quotient_holds(*s)]
    margin = min(ce.offset_quotient(l, a, d) - H / (H + 1) for l, a, d, H in samples)
    rows = [{"length": l, "area": a, "d": d, "H": H} for l, a, d, H in bad]
    return CheckResult(8, "offset quotient bound", not bad,
                       {"samples": n, "violations": len(bad), "min_margin": margin}, rows)


# -- 10, 11: probability side ---------------------------------------------------------


def check_decay(eps: float = 0.1, grid=prob_bounds.DEFAULT_GRID, budget: int = wp_volumes.DEFAULT_BUDGET) -> CheckResult:
    schedule = prob_bounds.log_schedule(2, 0.5, 1.0)
    first, second = prob_bounds.collar_failure_bounds(schedule, eps, grid)
    third = prob_bounds.DecayCurve("multicurve", [(g, prob_bounds.multicurve_decay(g, 1, eps)) for g in grid])
    curves = [first, second, third]
    rows, ok = [], True
    verdicts = {}
    for c in curves:
        dec = c.decreasing_beyond(DECAY_FROM)
        below = c.below_by(DECAY_THRESHOLD, DECAY_BY)
        verdicts[c.label] = dec and below
        ok &= dec and below
        for g, v in c.samples:
            rows.append({"label": c.label, "g": g, "value": v})
    reindex = prob_bounds.reindex_check(wp_volumes.default_table(budget))
    ok = ok and reindex.ok
    summary = {f"{k}_ok": v for k, v in verdicts.items()}
    summary.update({"reindex_pairs": len(reindex.pairs), "reindex_ok": reindex.ok})
    return CheckResult(10, "decay curves and reindexing", ok, summary, rows, curves)


def check_thresholds(digits: int = DIGITS) -> CheckResult:
    t = prob_bounds.threshold_constants(digits + 10)
    c1_max = prob_bounds.significant(t["c1_max"], digits)
    cheeger_prob = prob_bounds.significant(t["cheeger_threshold"], digits)
    cheeger_geo = prob_bounds.significant(ce.cheeger_threshold(digits + 10), digits)
    with mpmath.workdps(digits + 20):
        c1_direct = prob_bounds.significant(mpmath.log(2) / (2 * mpmath.pi), digits)
        C_geo = prob_bounds.significant(ce.cheeger_threshold(digits + 10) / 8, digits)
    C_prob = prob_bounds.significant(prob_bounds.assembled_supremum(digits + 10), digits)
    ok = cheeger_prob == cheeger_geo and c1_max == c1_direct and C_prob == C_geo
    ok = ok and all(len(x.replace("0.", "", 1).lstrip("0")) >= digits for x in (c1_max, cheeger_prob, C_prob))
    rows = [
        {"name": "c1_max", "value": c1_max},
        {"name": "cheeger_threshold", "value": cheeger_prob},
        {"name": "assembled_C", "value": C_prob},
    ]
    return CheckResult(11, "threshold constants", ok,
                       {"c1_max": c1_max, "cheeger_threshold": cheeger_prob, "assembled_C": C_prob}, rows)


def run_all(budget: int = wp_volumes.DEFAULT_BUDGET, eps: float = 0.1, grid=prob_bounds.DEFAULT_GRID,
            digits: int = DIGITS, progress=None) -> list[CheckResult]:
    """Every acceptance check in order; ``progress`` is called with each result."""
    out = []

    def add(result):
        out.append(result)
        if progress is not None:
            progress(result)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ce.NegativeSlackWarning)
        add(check_disk_oracle())
        add(check_flat_disk())
        runs, elapsed = run_corpus()
        add(check_upper_bounds(runs, elapsed))
        add(check_hexagons())
        add(check_gauss_bonnet(runs))
        add(check_volume_lemmas(budget))
        add(check_sum_window(budget))
        add(check_offset_quotient())
        add(check_jammes(runs))
        add(check_decay(eps, grid, budget))
        add(check_thresholds(digits))
    return out


__all__ = [name for name in dir() if name.startswith("check_")] + [
    "CheckResult", "CorpusRun", "corpus_specs", "pants_corpus", "run_corpus", "run_all",
    "hyperboloid_hexagon", "offset_samples",
]
