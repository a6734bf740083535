"""Time the compiled mesh kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--resolution R] [--repeat N]``.
"""

import argparse
import timeit

import numpy as np

from steklov_lab import _kernels_py
from steklov_lab.steklov_solver import steklov_spectrum
from steklov_lab.surface_builder import build_disk_mesh

try:
    from steklov_lab import _kernels_c
except ImportError:
    _kernels_c = None


def workloads(resolution):
    mesh = build_disk_mesh(1.0, resolution)
    values = steklov_spectrum(mesh, 1).eigenfunctions[:, 1]
    face_vals = values[mesh.faces]
    levels = np.linspace(values.min(), values.max(), 257)
    pairs = mesh.boundary_pairs
    bvals = values[pairs]
    blens = mesh.edge_lengths[mesh.boundary_edge_index]
    return {
        "face_geometry": lambda k: k.face_geometry(mesh.face_lengths),
        "levelset_measure": lambda k: k.levelset_measure(mesh.face_lengths, face_vals, levels),
        "boundary_above": lambda k: k.boundary_above(blens, bvals, levels),
    }, len(mesh.faces)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=float, default=0.02)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jobs, n_faces = workloads(args.resolution)
    print(f"{n_faces} faces, best of {args.repeat}")
    print(f"{'kernel':18s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, job in jobs.items():
        t_py = min(timeit.repeat(lambda: job(_kernels_py), number=1, repeat=args.repeat))
        if _kernels_c is None:
            print(f"{name:18s} {1e3 * t_py:12.2f} {'n/a':>12s}")
            continue
        t_c = min(timeit.repeat(lambda: job(_kernels_c), number=1, repeat=args.repeat))
        a, b = job(_kernels_py), job(_kernels_c)
        a = a if isinstance(a, tuple) else (a,)
        b = b if isinstance(b, tuple) else (b,)
        diff = max(float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) for x, y in zip(a, b))
        print(f"{name:18s} {1e3 * t_py:12.2f} {1e3 * t_c:12.2f} {t_py / t_c:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
