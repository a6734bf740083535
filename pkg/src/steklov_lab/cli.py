"""Command line front end: ``steklov-lab {steklov,constants,volumes,verify-all}``.

Exit codes: 0 success, 1 input error, 2 a mathematical check failed.
"""

from __future__ import annotations

import os

# thread caps must be in place before numpy loads its BLAS
_THREADS = os.environ.get("STEKLOV_LAB_THREADS")
if _THREADS:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _THREADS)

import argparse  # noqa: E402
import csv  # noqa: E402
import hashlib  # noqa: E402
import io  # noqa: E402
import json  # noqa: E402
import sys  # noqa: E402
import time  # noqa: E402
import warnings  # noqa: E402
from dataclasses import asdict, dataclass, field  # noqa: E402
from pathlib import Path  # noqa: E402

from . import __version__  # noqa: E402

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    surface: str | None = None
    resolution: float | None = None
    k: int = 5
    eps: float = 0.1
    eps_prime: float = 0.1
    c1: float = 0.05
    c2: float = 0.1
    budget: int = 12
    grid: list = field(default_factory=list)
    out: str = "steklov_out"
    precision: int = 30
    with_levelset: bool = False

    def validate(self):
        if self.resolution is not None and not 0 < self.resolution <= 1:
            raise InputError(f"--resolution must lie in (0, 1], got {self.resolution}")
        if self.k < 1:
            raise InputError(f"-k must be at least 1, got {self.k}")
        if not 0 < self.eps < 0.25:
            raise InputError(f"--eps must lie in (0, 1/4), got {self.eps}")
        if not 0 < self.eps_prime < 1:
            raise InputError(f"--eps-prime must lie in (0, 1), got {self.eps_prime}")
        if not 0 < self.c1 < self.c2:
            raise InputError(f"need 0 < c1 < c2, got c1={self.c1}, c2={self.c2}")
        if not 1 <= self.budget <= 15:
            raise InputError(f"--budget must lie in [1, 15], got {self.budget}")
        if not 30 <= self.precision <= 200:
            raise InputError(f"--precision must lie in [30, 200], got {self.precision}")
        if any(not g > 1 for g in self.grid) or sorted(set(self.grid)) != list(self.grid):
            raise InputError("--grid must be strictly increasing values above 1")

    def digest(self) -> str:
        # the output location does not change results
        blob = json.dumps({k: v for k, v in asdict(self).items() if k != "out"}, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def parse_grid(text: str) -> list[float]:
    """``lo:hi`` for a decade grid (exponents), or a comma separated list."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return [10.0**e for e in range(lo, hi + 1)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="steklov_out", help="output directory")
    common.add_argument("--precision", type=int, default=30, help="significant digits for constants")
    common.add_argument("--budget", type=int, default=12, help="volume table budget 3g + n - 3")
    common.add_argument("--eps", type=float, default=0.1)
    common.add_argument("--eps-prime", type=float, default=0.1)
    common.add_argument("--c1", type=float, default=0.05)
    common.add_argument("--c2", type=float, default=0.1)
    common.add_argument("--grid", type=parse_grid, default=None, help="genus grid, e.g. 3:9 or 1e3,1e6")

    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("--surface", required=True, help="JSON surface spec")
    surf.add_argument("--resolution", type=float, default=None, help="target edge length")
    surf.add_argument("-k", type=int, default=5, help="number of nonzero eigenvalues")

    p = argparse.ArgumentParser(prog="steklov-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("steklov", parents=[common, surf], help="Steklov spectrum and upper bounds")
    c = sub.add_parser("constants", parents=[common, surf], help="Cheeger and Jammes estimates")
    c.add_argument("--with-levelset", action="store_true", help="merge eigenfunction level sets")
    sub.add_parser("volumes", parents=[common], help="export the volume polynomial table")
    sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    return p


def config_from_args(args) -> RunConfig:
    from .prob_bounds import DEFAULT_GRID

    cfg = RunConfig(
        command=args.command,
        surface=getattr(args, "surface", None),
        resolution=getattr(args, "resolution", None),
        k=getattr(args, "k", 5),
        eps=args.eps,
        eps_prime=args.eps_prime,
        c1=args.c1,
        c2=args.c2,
        budget=args.budget,
        grid=list(args.grid) if args.grid else list(DEFAULT_GRID),
        out=args.out,
        precision=args.precision,
        with_levelset=getattr(args, "with_levelset", False),
    )
    cfg.validate()
    return cfg


# -- output ----------------------------------------------------------------


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    return str(v)


def rows_to_csv(rows: list[dict], digest: str) -> str:
    buf = io.StringIO()
    if not rows:
        return f"config_hash\n{digest}\n"
    keys = list(rows[0])
    for r in rows[1:]:
        keys += [k for k in r if k not in keys]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys + ["config_hash"])
    for r in rows:
        w.writerow([_cell(r.get(k, "")) for k in keys] + [digest])
    return buf.getvalue()


class Outputs:
    """Collects files in memory and writes them only when the run succeeds."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.digest = cfg.digest()
        self.files: dict[str, bytes] = {}
        self.svgs: dict[str, object] = {}
        self.started = time.time()

    def csv(self, name: str, rows: list[dict]):
        self.files[name] = rows_to_csv(rows, self.digest).encode("utf-8")

    def json(self, name: str, obj):
        self.files[name] = (json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n").encode("utf-8")

    def svg(self, name: str, curve):
        self.svgs[name] = curve

    def write(self, status: int, extra: dict | None = None):
        from .prob_bounds import curve_svg

        out = Path(self.cfg.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            for name, data in self.files.items():
                (out / name).write_bytes(data)
            for name, curve in self.svgs.items():
                curve_svg(curve, out / name)
            manifest = {
                "version": __version__,
                "config": asdict(self.cfg),
                "config_hash": self.digest,
                "exit_code": status,
                "files": sorted(list(self.files) + list(self.svgs)),
                "seconds": round(time.time() - self.started, 3),
            }
            manifest.update(extra or {})
            (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True, default=_jsonable) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write to {out}: {exc}") from exc


def _jsonable(x):
    try:
        return float(x)
    except (TypeError, ValueError):
        return str(x)


# -- commands ----------------------------------------------------------------


def _load_surface(cfg: RunConfig):
    from .surface_builder import SurfaceError, load_surface_spec

    try:
        spec = load_surface_spec(cfg.surface)
    except FileNotFoundError as exc:
        raise InputError(f"{cfg.surface}: no such file") from exc
    except SurfaceError as exc:
        raise InputError(str(exc)) from exc
    res = cfg.resolution if cfg.resolution is not None else spec.resolution
    if res is None:
        res = 0.1
    try:
        mesh = spec.build(res)
    except (SurfaceError, ValueError) as exc:
        raise InputError(f"{cfg.surface}: {exc}") from exc
    return spec, mesh


def cmd_steklov(cfg: RunConfig, outputs: Outputs) -> int:
    from .steklov_solver import SteklovError, format_record, steklov_spectrum, verify_upper_bounds
    from .surface_builder import refine_mesh

    spec, mesh = _load_surface(cfg)
    try:
        sp = steklov_spectrum(mesh, cfg.k)
    except SteklovError as exc:
        raise InputError(f"{cfg.surface}: {exc}") from exc
    bounds = verify_upper_bounds(sp.normalized_first, mesh.genus, mesh.n_boundary)
    record = format_record(spec.name, mesh, sp, bounds)
    violated = not bounds.ok
    if violated:
        # P1 elements overestimate eigenvalues; only a gap wider than the
        # change under one refinement counts as a violation
        fine = steklov_spectrum(refine_mesh(mesh), 1).normalized_first
        allowance = abs(sp.normalized_first - fine)
        record["refined_sigma_tilde_1"] = fine
        record["discretization_allowance"] = allowance
        violated = not verify_upper_bounds(min(fine, sp.normalized_first) - allowance, mesh.genus, mesh.n_boundary).ok
    record["bound_violation"] = violated
    record["bound_genus_components_ok"] = bounds.passes_genus_components
    record["bound_genus_only_ok"] = bounds.passes_genus_only
    record["sharper_bound"] = bounds.sharper
    outputs.json("spectrum.json", record)
    outputs.csv("eigenvalues.csv", [{"index": i, "sigma": float(v)} for i, v in enumerate(sp.eigenvalues)])
    print(f"{spec.name}: sigma_1 = {sp.sigma1:.8g}, normalized = {sp.normalized_first:.8g}, "
          f"bounds {bounds.bound_genus_components:.6g} / {bounds.bound_genus_only:.6g}")
    return EXIT_CHECK if violated else EXIT_OK


def cmd_constants(cfg: RunConfig, outputs: Outputs) -> int:
    from . import constants_estimator as ce
    from .steklov_solver import steklov_spectrum

    spec, mesh = _load_surface(cfg)
    if spec.disk is not None:
        raise InputError(f"{cfg.surface}: constants need a pants decomposition")
    if mesh.n_boundary == 0:
        raise InputError(f"{cfg.surface}: surface has no boundary, the Jammes constant is undefined")
    sp = steklov_spectrum(mesh, max(cfg.k, 1))
    candidates = ce.enumerate_candidates(spec.graph, spec.coords, mesh)
    report = ce.estimate_constants(candidates, mesh)
    if cfg.with_levelset:
        report, _ = ce.levelset_sweep(sp, mesh, report)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ce.NegativeSlackWarning)
        record = ce.report_record(spec.name, report, sp.sigma1)
        record["negative_slack_warning"] = bool(caught)
    outputs.json("constants.json", record)
    outputs.csv("candidates.csv", [
        {"kind": " ".join(sorted({s.kind for s in c.segments})) or "none", "description": c.description,
         "length": c.total_length, "area": c.area, "cheeger": c.cheeger_value(), "jammes": c.jammes_value()}
        for c in sorted(candidates, key=lambda c: c.key())
    ])
    print(f"{spec.name}: h_C <= {report.h_C_upper:.6g}, h_J <= {report.h_J_upper:.6g}, "
          f"jammes slack = {record['jammes_slack']:.6g}")
    return EXIT_OK


def cmd_volumes(cfg: RunConfig, outputs: Outputs) -> int:
    from . import wp_volumes

    table = wp_volumes.default_table(cfg.budget)
    polys = [table.polynomial(g, n) for g, n in table.stable_pairs()]
    outputs.files["volumes.txt"] = wp_volumes.export_table(polys).encode("utf-8")
    outputs.csv("volumes.csv", [
        {"g": p.g, "n": p.n, "constant": str(p.constant()), "pi_power": p.dim}
        for p in polys
    ])
    print(f"{len(polys)} volume polynomials with 3g + n - 3 <= {cfg.budget}")
    return EXIT_OK


def cmd_verify_all(cfg: RunConfig, outputs: Outputs) -> int:
    from . import verification

    def show(result):
        print(result.line(), flush=True)

    results = verification.run_all(budget=cfg.budget, eps=cfg.eps, grid=cfg.grid,
                                   digits=cfg.precision, progress=show)
    summary = []
    for r in results:
        summary.append({"criterion": r.number, "title": r.title, "passed": r.passed,
                        **{k: v for k, v in r.summary.items() if k != "seconds"}})
        outputs.csv(f"check_{r.number:02d}.csv", r.rows)
        for curve in r.curves:
            outputs.svg(f"check_{r.number:02d}_{curve.label}.svg", curve)
    outputs.csv("summary.csv", [{"criterion": s["criterion"], "title": s["title"], "passed": s["passed"]} for s in summary])
    outputs.json("summary.json", summary)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_CHECK if failed else EXIT_OK


COMMANDS = {
    "steklov": cmd_steklov,
    "constants": cmd_constants,
    "volumes": cmd_volumes,
    "verify-all": cmd_verify_all,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        outputs = Outputs(cfg)
        status = COMMANDS[cfg.command](cfg, outputs)
        outputs.write(status)
    except InputError as exc:
        print(f"steklov-lab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return status


if __name__ == "__main__":
    sys.exit(main())
