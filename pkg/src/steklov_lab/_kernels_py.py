"""Pure numpy versions of the per-face mesh kernels.

Every routine takes per-face edge lengths ``L[f, i]`` where edge ``i`` is
opposite vertex ``i``.  The compiled module mirrors these signatures.
"""

import numpy as np


def face_geometry(lengths):
    """Areas and corner cotangents of flat triangles with the given side lengths.

    Returns
    -------
    area : (F,) ndarray
    cot : (F, 3) ndarray
        ``cot[f, i]`` is the cotangent of the angle at vertex ``i``.
    """
    L = np.asarray(lengths, dtype=np.float64)
    s = np.sort(L, axis=1)[:, ::-1]
    a, b, c = s[:, 0], s[:, 1], s[:, 2]
    # Kahan's ordering keeps Heron stable for needle triangles
    prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    area = 0.25 * np.sqrt(np.maximum(prod, 0.0))
    sq = L * L
    tot = sq.sum(axis=1, keepdims=True)
    cot = (tot - 2.0 * sq) / (4.0 * area[:, None])
    return area, cot


def _sorted_corners(lengths, values):
    order = np.argsort(values, axis=1, kind="stable")
    rows = np.arange(values.shape[0])[:, None]
    f = values[rows, order]
    # side opposite the k-th smallest vertex
    opp = lengths[rows, order]
    return f, opp


def levelset_measure(lengths, values, levels):
    """Area of ``{f >= t}`` and length of ``{f = t}`` for a PL function on each face, summed.

    Parameters
    ----------
    lengths : (F, 3) array
    values : (F, 3) array
        Nodal values of the function on each face's corners.
    levels : (T,) array

    Returns
    -------
    area, cut : (T,) ndarrays
    """
    L = np.asarray(lengths, dtype=np.float64)
    V = np.asarray(values, dtype=np.float64)
    levels = np.asarray(levels, dtype=np.float64)
    area, _ = face_geometry(L)
    f, opp = _sorted_corners(L, V)
    fa, fb, fc = f[:, 0], f[:, 1], f[:, 2]
    # sides: |bc| = opp[:,0], |ca| = opp[:,1], |ab| = opp[:,2]
    bc, ca, ab = opp[:, 0], opp[:, 1], opp[:, 2]
    out_area = np.empty(levels.size)
    out_cut = np.empty(levels.size)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for j, t in enumerate(levels):
            full = t <= fa
            top = (t >= fb) & (t < fc) & ~full
            mid = (t > fa) & (t < fb)
            acc = np.where(full, area, 0.0)
            cut = np.zeros_like(area)

            # small triangle at the top corner c
            s = (fc - t) / (fc - fa)
            u = (fc - t) / (fc - fb)
            acc = np.where(top, area * s * u, acc)
            d2 = s * s * ca * ca + u * u * bc * bc - s * u * (ca * ca + bc * bc - ab * ab)
            cut = np.where(top, np.sqrt(np.maximum(d2, 0.0)), cut)

            # complement is a small triangle at the bottom corner a
            s = (t - fa) / (fc - fa)
            u = (t - fa) / (fb - fa)
            acc = np.where(mid, area * (1.0 - s * u), acc)
            d2 = s * s * ca * ca + u * u * ab * ab - s * u * (ca * ca + ab * ab - bc * bc)
            cut = np.where(mid, np.sqrt(np.maximum(d2, 0.0)), cut)

            out_area[j] = acc.sum()
            out_cut[j] = cut.sum()
    return out_area, out_cut


def boundary_above(edge_lengths, values, levels):
    """Length of boundary edges where the linear interpolant is ``>= t``.

    ``values`` has shape (B, 2), the endpoint values of each boundary edge.
    """
    h = np.asarray(edge_lengths, dtype=np.float64)
    V = np.asarray(values, dtype=np.float64)
    lo = V.min(axis=1)
    hi = V.max(axis=1)
    out = np.empty(len(levels))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for j, t in enumerate(np.asarray(levels, dtype=np.float64)):
            frac = np.where(lo >= t, 1.0, np.where(hi < t, 0.0, (hi - t) / (hi - lo)))
            out[j] = (h * frac).sum()
    return out
