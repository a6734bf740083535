"""Upper estimates of the Cheeger, modified Jammes and geodesic Cheeger constants.

Candidates come from the pants decomposition (unions of hexagons and of
pants, arcs cut by the seams, self-arcs at a boundary cuff), from equidistant
offsets of the geodesic ones, from small circles and half-circles, and from
level sets of the first Steklov eigenfunction.  Every quantity is an upper
estimate of an infimum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from itertools import combinations

import mpmath
import numpy as np
import scipy.sparse as sp

from . import hyp_trig
from .kernels import boundary_above, levelset_measure
from .surface_builder import FNCoordinates, PantsGraph, TriangleMesh, hexagon_vertices, minkowski, slot_lengths, validate_graph

N_SAMPLES = 64
MAX_SEGMENTS = 8
MAX_CELLS = 16
N_LEVELS = 257
AREA_RTOL = 1e-9

CLOSED = "closed_geodesic"
EQUIDISTANT = "equidistant_curve"
CIRCLE = "circle"
ARC = "free_boundary_arc"
EQUIDISTANT_ARC = "equidistant_arc"
HALF_CIRCLE = "half_circle"
# piecewise geodesic with corners: a valid test set, outside the minimizer types
BROKEN = "broken_geodesic"
LEVEL_SET = "level_set"
GEODESIC_KINDS = frozenset({CLOSED, ARC})


class ConstantsError(ValueError):
    """Candidate search cannot produce the requested constant."""


class NegativeSlackWarning(UserWarning):
    """Estimated constants exceed what the computed eigenvalue allows; review by hand."""


@dataclass(frozen=True)
class Segment:
    kind: str
    length: float
    label: str = ""


@dataclass(frozen=True)
class CurveSystem:
    """A cutting system splitting the surface into ``Omega`` and its complement.

    ``exterior`` and ``complement_exterior`` are the lengths of the surface
    boundary inside each side.  ``*_components_meet_boundary`` say whether
    every component of that side touches the surface boundary.
    """

    segments: tuple
    area: float
    total_area: float
    exterior: float
    complement_exterior: float
    omega_components_meet_boundary: bool
    complement_components_meet_boundary: bool
    description: str = ""
    separates_surface: bool = True

    @property
    def total_length(self) -> float:
        return float(sum(s.length for s in self.segments))

    @property
    def area_split(self) -> tuple[float, float]:
        a, b = self.area, self.total_area - self.area
        return (a, b) if a <= b else (b, a)

    @property
    def is_geodesic(self) -> bool:
        return all(s.kind in GEODESIC_KINDS for s in self.segments)

    def cheeger_value(self) -> float:
        small = self.area_split[0]
        if small <= 0:
            return math.inf
        return self.total_length / small

    def jammes_value(self) -> float:
        """Best admissible side, or ``inf`` when neither side is admissible."""
        best = math.inf
        half = 0.5 * self.total_area * (1 + AREA_RTOL)
        sides = (
            (self.area, self.exterior, self.complement_components_meet_boundary),
            (self.total_area - self.area, self.complement_exterior, self.omega_components_meet_boundary),
        )
        for area, ext, others_ok in sides:
            if area <= half and ext > 0 and others_ok:
                best = min(best, self.total_length / ext)
        return best

    def key(self):
        return (self.total_length, len(self.segments), self.description)


@dataclass
class ConstantsReport:
    h_C_upper: float
    h_J_upper: float
    H_upper: float
    h_C_witness: str = ""
    h_J_witness: str = ""
    H_witness: str = ""
    H_certified: bool = False
    candidates: int = 0
    sources: dict = field(default_factory=dict)

    @property
    def geodesic_lower(self) -> float:
        """``H / (H + 1)``; a lower bound for the Cheeger constant when ``H`` is exact."""
        H = self.H_upper
        return H / (H + 1) if math.isfinite(H) else 1.0

    def geodesic_lower_consistent(self, tol: float = 1e-12) -> bool:
        return self.h_C_upper >= self.geodesic_lower - tol


def _best(items):
    """Minimum of ``(value, key, description)`` triples, ties broken lexicographically."""
    best = None
    for item in items:
        if math.isfinite(item[0]) and (best is None or item[:2] < best[:2]):
            best = item
    return best


# -- cell complexes -------------------------------------------------------


@dataclass
class _Interface:
    a: int
    b: int
    length: float
    kind: str  # "seam", "cuff" or "arc"
    group: tuple
    free: bool = False  # seam or arc with both ends on the boundary


@dataclass
class _Complex:
    areas: list
    exterior: list
    interfaces: list
    group_length: dict
    labels: list

    def neighbours(self):
        adj = [set() for _ in self.areas]
        for it in self.interfaces:
            if it.length > 0 and it.a != it.b:
                adj[it.a].add(it.b)
                adj[it.b].add(it.a)
        return adj


def arc_overlap(a0, a1, b0, b1, period):
    """Length of the intersection of two arcs ``[a0, a1]`` and ``[b0, b1]`` on a circle."""
    shift = math.floor((b0 - a0) / period)
    b0, b1 = b0 - shift * period, b1 - shift * period
    total = 0.0
    for k in (-1, 0, 1):
        total += max(0.0, min(a1, b1 + k * period) - max(a0, b0 + k * period))
    return total


_SEAMS = ((0, 1), (1, 2), (2, 0))


def _hex_complex(graph: PantsGraph, coords: FNCoordinates) -> _Complex:
    lengths = slot_lengths(graph, coords)
    boundary = set(graph.boundary_slots)
    P = graph.pants
    areas = [math.pi] * (2 * P)
    exterior = [0.0] * (2 * P)
    labels = [f"hex{p}{'ab'[c]}" for p in range(P) for c in (0, 1)]
    for p, s in graph.boundary_slots:
        exterior[2 * p] += lengths[(p, s)] / 2
        exterior[2 * p + 1] += lengths[(p, s)] / 2
    interfaces, group_length = [], {}
    for p in range(P):
        b12, b23, b31 = hyp_trig.pants_seams(*(lengths[(p, s)] for s in range(3)))
        for (i, j), b in zip(_SEAMS, (b12, b23, b31)):
            free = (p, i) in boundary and (p, j) in boundary
            grp = ("seam", p, i, j)
            interfaces.append(_Interface(2 * p, 2 * p + 1, b, "seam", grp, free))
            group_length[grp] = b
    for gi, (((p, s), (q, t)), length, tau) in enumerate(zip(graph.gluings, coords.cuff_lengths, coords.twists)):
        grp = ("cuff", gi)
        group_length[grp] = length
        half = length / 2
        for c1, (a0, a1) in enumerate(((0.0, half), (half, length))):
            for c2, (w0, w1) in enumerate(((0.0, half), (half, length))):
                # W position y meets U position tau - y
                ov = arc_overlap(a0, a1, tau - w1, tau - w0, length)
                if ov > 1e-12 * length:
                    interfaces.append(_Interface(2 * p + c1, 2 * q + c2, ov, "cuff", grp))
    return _Complex(areas, exterior, interfaces, group_length, labels)


def self_arc_geometry(eta: float, alpha: float, beta: float) -> tuple[float, float]:
    """Half-length ``d`` of the orthogeodesic from ``eta`` to itself and the share of ``eta`` on the ``alpha`` side.

    The arc meets the seam opposite ``eta`` at a right angle; the piece
    containing ``alpha`` keeps ``2 x`` of ``eta`` where
    ``cosh(alpha / 2) = sinh d sinh x``.
    """
    d = hyp_trig.collar_width(eta, alpha, beta).width
    x = math.asinh(math.cosh(alpha / 2) / math.sinh(d))
    return d, 2 * x


def _self_arc_complex(graph: PantsGraph, coords: FNCoordinates, p: int, e: int) -> _Complex:
    """Pants ``p`` cut by the self-arc at boundary slot ``e``; all other pants kept whole."""
    lengths = slot_lengths(graph, coords)
    boundary = set(graph.boundary_slots)
    sa, sb = [s for s in range(3) if s != e]
    eta, alpha, beta = lengths[(p, e)], lengths[(p, sa)], lengths[(p, sb)]
    d, share = self_arc_geometry(eta, alpha, beta)
    others = [q for q in range(graph.pants) if q != p]
    index = {("piece", sa): 0, ("piece", sb): 1}
    for i, q in enumerate(others):
        index[("whole", q)] = 2 + i
    n_cells = 2 + len(others)
    areas = [math.pi, math.pi] + [2 * math.pi] * len(others)
    exterior = [share, eta - share] + [0.0] * len(others)
    labels = [f"piece{p}/{sa}", f"piece{p}/{sb}"] + [f"pants{q}" for q in others]

    def cell(slot):
        q, s = slot
        if q == p:
            return index[("piece", s)]
        return index[("whole", q)]

    for slot in graph.boundary_slots:
        if slot != (p, e):
            exterior[cell(slot)] += lengths[slot]
    interfaces = [_Interface(0, 1, 2 * d, "arc", ("arc", p, e), True)]
    group_length = {("arc", p, e): 2 * d}
    for gi, ((a, b), length) in enumerate(zip(graph.gluings, coords.cuff_lengths)):
        grp = ("cuff", gi)
        group_length[grp] = length
        interfaces.append(_Interface(cell(a), cell(b), length, "cuff", grp))
    assert len(areas) == n_cells and (p, e) in boundary
    return _Complex(areas, exterior, interfaces, group_length, labels)


def _components_ok(cells, adj, exterior):
    """Every connected component of ``cells`` contains some surface boundary."""
    cells = set(cells)
    seen = set()
    for start in sorted(cells):
        if start in seen:
            continue
        stack, comp, touches = [start], [], False
        seen.add(start)
        while stack:
            c = stack.pop()
            comp.append(c)
            touches |= exterior[c] > 0
            for nb in adj[c]:
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if not touches:
            return False
    return True


def _systems_from_complex(cx: _Complex, prefix: str) -> list[CurveSystem]:
    n = len(cx.areas)
    if n > MAX_CELLS:
        raise ConstantsError(f"{n} cells is beyond the exhaustive search limit of {MAX_CELLS}")
    adj = cx.neighbours()
    total_area = sum(cx.areas)
    total_ext = sum(cx.exterior)
    out = []
    everything = set(range(n))
    for size in range(1, n):
        for subset in combinations(range(n), size):
            if 0 not in subset:
                continue
            S = set(subset)
            cut = [it for it in cx.interfaces if (it.a in S) != (it.b in S)]
            if not cut:
                continue
            segments = []
            by_group = {}
            for it in cut:
                by_group.setdefault(it.group, []).append(it)
            for grp, items in sorted(by_group.items()):
                length = sum(it.length for it in items)
                kind0 = items[0].kind
                if kind0 == "cuff":
                    if abs(length - cx.group_length[grp]) <= 1e-12 * length:
                        segments.append(Segment(CLOSED, length, f"cuff{grp[1]}"))
                    else:
                        segments += [Segment(BROKEN, it.length, f"cuff{grp[1]}") for it in items]
                else:
                    kind = ARC if items[0].free else BROKEN
                    tag = "seam" if kind0 == "seam" else "selfarc"
                    segments.append(Segment(kind, length, f"{tag}{grp[1:]}"))
            if len(segments) > MAX_SEGMENTS:
                continue
            area = sum(cx.areas[c] for c in S)
            ext = sum(cx.exterior[c] for c in S)
            rest = everything - S
            out.append(
                CurveSystem(
                    segments=tuple(segments),
                    area=area,
                    total_area=total_area,
                    exterior=ext,
                    complement_exterior=total_ext - ext,
                    omega_components_meet_boundary=_components_ok(S, adj, cx.exterior),
                    complement_components_meet_boundary=_components_ok(rest, adj, cx.exterior),
                    description=f"{prefix}{{{','.join(cx.labels[c] for c in sorted(S))}}}",
                )
            )
    return out


# -- offsets, circles -----------------------------------------------------


def offset_system(system: CurveSystem, d: float) -> CurveSystem:
    """Push every curve a distance ``d`` into the larger side.

    Lengths scale by ``cosh d``, the smaller side gains ``l sinh d`` of area,
    and each arc moves ``d`` of boundary at both ends to the smaller side.
    """
    if d == 0:
        return system
    length = system.total_length
    swept = length * math.sinh(d)
    moved = 2 * d * sum(1 for s in system.segments if s.kind in (ARC, EQUIDISTANT_ARC))
    kinds = {CLOSED: EQUIDISTANT, ARC: EQUIDISTANT_ARC}
    segs = tuple(Segment(kinds.get(s.kind, s.kind), s.length * math.cosh(d), s.label) for s in system.segments)
    small_is_omega = system.area <= system.total_area - system.area
    sign = 1 if small_is_omega else -1
    return replace(
        system,
        segments=segs,
        area=system.area + sign * swept,
        exterior=system.exterior + sign * moved,
        complement_exterior=system.complement_exterior - sign * moved,
        description=f"{system.description}+offset({d:.6g})",
    )


def _segment_cap(seg: Segment, graph, lengths) -> float:
    if seg.label.startswith("cuff"):
        return hyp_trig.standard_collar_width(seg.length)
    if seg.label.startswith("seam"):
        p, i, j = _parse_label(seg.label[4:])
        k = 3 - i - j
        ai, aj, ak = (lengths[(p, s)] / 2 for s in (i, j, k))
        # the seam is perpendicular to half-cuffs i and j; the side facing it is half-cuff k
        b_jk = hyp_trig.seam_length(ai, aj, ak)
        return min(ai, aj, hyp_trig.opposite_side_distance(aj, b_jk))
    return 0.0


def _parse_label(text: str) -> tuple:
    return tuple(int(x) for x in text.strip("()").split(",") if x.strip())


def _offsets(systems, graph, lengths, samples=N_SAMPLES):
    out = []
    for sys_ in systems:
        if not sys_.is_geodesic:
            continue
        cap = min(_segment_cap(s, graph, lengths) for s in sys_.segments)
        small = sys_.area_split[0]
        for k in range(1, samples + 1):
            d = cap * k / samples
            if d <= 0 or small + sys_.total_length * math.sinh(d) > 0.5 * sys_.total_area:
                break
            out.append(offset_system(sys_, d))
    return out


def _side_normal(p, q):
    n = np.cross(p, q)
    n = n * np.array([1.0, 1.0, -1.0])
    return n / math.sqrt(minkowski(n, n))


def _dist_to_side(x, p, q):
    return math.asinh(abs(float(minkowski(x, _side_normal(p, q)))))


def _circles(graph, lengths, total_area, total_ext, samples=N_SAMPLES):
    out = []
    boundary = set(graph.boundary_slots)
    for p in range(graph.pants):
        P = hexagon_vertices(*(lengths[(p, s)] for s in range(3)))
        sides = [(P[i], P[(i + 1) % 6]) for i in range(6)]
        c = P.sum(axis=0)
        c = c / math.sqrt(-minkowski(c, c))
        cap = min(_dist_to_side(c, a, b) for a, b in sides)
        for k in range(1, samples + 1):
            r = cap * k / samples
            area = 2 * math.pi * (math.cosh(r) - 1)
            out.append(
                CurveSystem(
                    segments=(Segment(CIRCLE, 2 * math.pi * math.sinh(r), f"circle{p}"),),
                    area=area,
                    total_area=total_area,
                    exterior=0.0,
                    complement_exterior=total_ext,
                    omega_components_meet_boundary=False,
                    complement_components_meet_boundary=total_ext > 0,
                    description=f"circle(pants{p},r={r:.6g})",
                )
            )
        for s in range(3):
            if (p, s) not in boundary:
                continue
            a, b = sides[2 * s]
            m = a + b
            m = m / math.sqrt(-minkowski(m, m))
            cap = min(_dist_to_side(m, *sides[j]) for j in range(6) if j != 2 * s)
            for k in range(1, samples + 1):
                r = cap * k / samples
                out.append(
                    CurveSystem(
                        segments=(Segment(HALF_CIRCLE, math.pi * math.sinh(r), f"halfcircle{p}/{s}"),),
                        area=math.pi * (math.cosh(r) - 1),
                        total_area=total_area,
                        exterior=2 * r,
                        complement_exterior=total_ext - 2 * r,
                        omega_components_meet_boundary=True,
                        complement_components_meet_boundary=True,
                        description=f"halfcircle(pants{p},slot{s},r={r:.6g})",
                    )
                )
    return out


def _boundary_collars(graph, lengths, total_area, total_ext, samples=N_SAMPLES):
    out = []
    n = len(graph.boundary_slots)
    for b, slot in enumerate(graph.boundary_slots):
        L = lengths[slot]
        cap = hyp_trig.standard_collar_width(L)
        for k in range(1, samples + 1):
            r = cap * k / samples
            area = L * math.sinh(r)
            if area > total_area / 2:
                break
            out.append(
                CurveSystem(
                    segments=(Segment(EQUIDISTANT, L * math.cosh(r), f"collar{b}"),),
                    area=area,
                    total_area=total_area,
                    exterior=L,
                    complement_exterior=total_ext - L,
                    omega_components_meet_boundary=True,
                    complement_components_meet_boundary=n > 1,
                    description=f"collar(boundary{b},r={r:.6g})",
                )
            )
    return out


def enumerate_candidates(graph: PantsGraph, coords: FNCoordinates, mesh: TriangleMesh | None = None) -> list[CurveSystem]:
    """All candidate systems for a surface given by a pants decomposition.

    Raises
    ------
    ConstantsError
        If ``mesh`` does not describe the same topological surface.
    """
    g, n = validate_graph(graph)
    if mesh is not None and (mesh.genus, mesh.n_boundary) != (g, n):
        raise ConstantsError(f"mesh is S_{mesh.genus},{mesh.n_boundary} but the graph is S_{g},{n}")
    lengths = slot_lengths(graph, coords)
    total_area = 2 * math.pi * graph.pants
    total_ext = float(sum(coords.boundary_lengths))

    systems = _systems_from_complex(_hex_complex(graph, coords), "cells")
    for p, e in graph.boundary_slots:
        systems += _systems_from_complex(_self_arc_complex(graph, coords, p, e), f"selfarc{p}/{e}")
    systems += _offsets(systems, graph, lengths)
    systems += _circles(graph, lengths, total_area, total_ext)
    systems += _boundary_collars(graph, lengths, total_area, total_ext)
    return systems


def estimate_constants(candidates, mesh: TriangleMesh | None = None) -> ConstantsReport:
    """Minimize the three quotients over the candidates.

    Raises
    ------
    ConstantsError
        If the list is empty or no candidate is admissible for the Jammes
        quotient (for instance a closed surface).
    """
    candidates = list(candidates)
    if not candidates:
        raise ConstantsError("no candidates")
    hc = _best((c.cheeger_value(), c.key(), c.description) for c in candidates)
    hj = _best((c.jammes_value(), c.key(), c.description) for c in candidates)
    H = _best((c.cheeger_value(), c.key(), c.description) for c in candidates if c.is_geodesic)
    if hj is None:
        raise ConstantsError("no admissible Jammes candidate; the modified Jammes constant is undefined")
    return ConstantsReport(
        h_C_upper=hc[0],
        h_J_upper=hj[0],
        H_upper=H[0] if H else math.inf,
        h_C_witness=hc[2],
        h_J_witness=hj[2],
        H_witness=H[2] if H else "",
        candidates=len(candidates),
        sources={"h_C": "candidates", "h_J": "candidates"},
    )


# -- level sets -----------------------------------------------------------


@dataclass
class LevelSweep:
    levels: np.ndarray
    area: np.ndarray
    interior: np.ndarray
    exterior: np.ndarray
    complement_ok: np.ndarray
    total_area: float

    def cheeger(self) -> np.ndarray:
        small = np.minimum(self.area, self.total_area - self.area)
        with np.errstate(divide="ignore", invalid="ignore"):
            v = self.interior / small
        return np.where((small > 0) & (self.interior > 0), v, np.inf)

    def jammes(self) -> np.ndarray:
        ok = (self.area <= 0.5 * self.total_area * (1 + AREA_RTOL)) & (self.exterior > 0) & self.complement_ok
        with np.errstate(divide="ignore", invalid="ignore"):
            v = self.interior / self.exterior
        return np.where(ok & (self.interior > 0), v, np.inf)


def _adjacency(mesh: TriangleMesh):
    e = mesh.edges
    n = mesh.n_vertices
    A = sp.coo_matrix((np.ones(2 * len(e)), (np.r_[e[:, 0], e[:, 1]], np.r_[e[:, 1], e[:, 0]])), shape=(n, n)).tocsr()
    return A.indptr, A.indices


def complement_check(mesh: TriangleMesh, values: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """For each level, whether every component of ``{f < t}`` contains a boundary vertex.

    Uses the vertex graph of the mesh and an incremental union-find as the
    level rises.
    """
    indptr, indices = _adjacency(mesh)
    is_b = np.zeros(mesh.n_vertices, dtype=bool)
    is_b[mesh.boundary_vertices] = True
    order = np.argsort(values, kind="stable")
    parent = np.full(mesh.n_vertices, -1, dtype=np.int64)
    good = np.zeros(mesh.n_vertices, dtype=bool)
    bad = 0

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    out = np.empty(len(levels), dtype=bool)
    pos = 0
    for j, t in enumerate(levels):
        while pos < len(order) and values[order[pos]] < t:
            v = order[pos]
            pos += 1
            parent[v] = v
            good[v] = is_b[v]
            bad += not good[v]
            for u in indices[indptr[v] : indptr[v + 1]]:
                if parent[u] < 0:
                    continue
                ru, rv = find(u), find(v)
                if ru == rv:
                    continue
                if not good[ru] and not good[rv]:
                    bad -= 1
                elif good[ru] != good[rv]:
                    bad -= 1
                parent[ru] = rv
                good[rv] = good[ru] or good[rv]
        out[j] = bad == 0
    return out


def sweep_function(mesh: TriangleMesh, values: np.ndarray, levels: np.ndarray) -> LevelSweep:
    """Area, interior cut length and boundary length of ``{f >= t}`` for each level ``t``."""
    values = np.asarray(values, dtype=np.float64)
    levels = np.asarray(levels, dtype=np.float64)
    area, cut = levelset_measure(mesh.face_lengths, values[mesh.faces], levels)
    bidx = mesh.boundary_edge_index
    ext = boundary_above(mesh.edge_lengths[bidx], values[mesh.boundary_pairs], levels)
    ok = complement_check(mesh, values, levels)
    return LevelSweep(levels, area, cut, ext, ok, mesh.area)


def _oriented_first(spec, mesh):
    f = np.asarray(spec.eigenfunctions[:, 1], dtype=np.float64)
    if np.ptp(f) <= 1e-12 * max(1.0, np.abs(f).max()):
        raise ConstantsError("first eigenfunction is constant; mesh is under-resolved")
    positive_area = levelset_measure(mesh.face_lengths, f[mesh.faces], np.array([0.0]))[0][0]
    # the positive part should be the smaller half
    return -f if positive_area > 0.5 * mesh.area else f


def levelset_sweep(spec, mesh: TriangleMesh, report: ConstantsReport | None = None, n_levels: int = N_LEVELS):
    """Merge superlevel sets of the first eigenfunction into ``report``.

    Both ``f`` and ``-f`` are swept, ``f`` signed so that its positive part
    has at most half the area.  Returns the merged report and the sweep of
    ``f`` over positive levels.
    """
    f = _oriented_first(spec, mesh)
    results = []
    main = None
    for sign in (1, -1):
        g = sign * f
        top = g.max()
        levels = top * np.arange(1, n_levels + 1) / (n_levels + 1)
        if sign == 1:
            # include levels below zero too; they are valid sets
            lo = g.min()
            levels = np.concatenate([lo + (0 - lo) * np.arange(1, n_levels + 1) / (n_levels + 1), [0.0], levels])
        sw = sweep_function(mesh, g, levels)
        if sign == 1:
            main = sw
        results.append((sign, sw))
    hc_items, hj_items = [], []
    for sign, sw in results:
        for t, vc, vj, cut in zip(sw.levels, sw.cheeger(), sw.jammes(), sw.interior):
            desc = f"levelset({'+' if sign == 1 else '-'}f>={t:.6g})"
            hc_items.append((float(vc), (float(cut), 1, desc), desc))
            hj_items.append((float(vj), (float(cut), 1, desc), desc))
    hc = _best(hc_items)
    hj = _best(hj_items)
    if report is None:
        report = ConstantsReport(math.inf, math.inf, math.inf)
    merged = replace(report, sources=dict(report.sources))
    if hc is not None and hc[0] < merged.h_C_upper:
        merged.h_C_upper, merged.h_C_witness = hc[0], hc[2]
        merged.sources["h_C"] = LEVEL_SET
    if hj is not None and hj[0] < merged.h_J_upper:
        merged.h_J_upper, merged.h_J_witness = hj[0], hj[2]
        merged.sources["h_J"] = LEVEL_SET
    merged.sources["levelset_h_C"] = hc[0] if hc else math.inf
    merged.sources["levelset_h_J"] = hj[0] if hj else math.inf
    return merged, main


# -- inequalities ---------------------------------------------------------


def jammes_check(sigma1: float, report: ConstantsReport, warn: bool = True) -> float:
    """``sigma_1 - h_C h_J / 4``.  Negative values warn instead of failing."""
    slack = sigma1 - 0.25 * report.h_C_upper * report.h_J_upper
    if slack < 0 and warn:
        warnings.warn(
            f"sigma_1={sigma1:.6g} is below h_C*h_J/4={0.25 * report.h_C_upper * report.h_J_upper:.6g}; "
            "candidate family too coarse or solver error",
            NegativeSlackWarning,
            stacklevel=2,
        )
    return slack


def offset_quotient(length: float, area: float, d: float) -> float:
    """``l cosh d / (A + l sinh d)``, the quotient of a system pushed a distance ``d``."""
    return length * math.cosh(d) / (area + length * math.sinh(d))


def offset_quotient_holds(length: float, area: float, d: float, H: float) -> bool:
    """``offset_quotient >= H / (H + 1)`` whenever ``H <= length / area``."""
    if H > length / area:
        raise ConstantsError("requires H <= length / area")
    lhs = offset_quotient(length, area, d)
    return lhs >= H / (H + 1) * (1 - 1e-14)


def geodesic_lower_exact(H, digits: int = 40):
    """``H / (H + 1)`` as an mpf with ``digits`` working digits."""
    with mpmath.workdps(digits + 10):
        H = mpmath.mpf(H)
        return +(H / (H + 1))


def cheeger_threshold(digits: int = 40):
    """``H / (H + 1)`` at ``H = ln 2 / (2 pi)``: the Cheeger level reached from the geodesic threshold."""
    with mpmath.workdps(digits + 10):
        return geodesic_lower_exact(mpmath.log(2) / (2 * mpmath.pi), digits)


def theorem1_case_calculator(g: float, eps: float, widths=None, boundary_length=None) -> dict:
    """Constants of the large-genus argument for one boundary component.

    Returns the half-collar width, the boundary-length window, the two Jammes
    lower bounds and the factors used for the Cheeger estimate.  ``widths``
    and ``boundary_length``, when given, are checked against them.
    """
    if not 0 < eps < 0.25:
        raise ConstantsError(f"eps must lie in (0, 1/4), got {eps}")
    if g < 2:
        raise ConstantsError("genus must be at least 2")
    log_g = math.log(g)
    width = (0.5 - eps) * log_g
    window = ((2 - eps) * log_g, 2 * log_g)
    jammes_case1 = 1.0
    jammes_case2 = (1 - 2 * eps) / 2
    jammes_bound = min(jammes_case1, jammes_case2)
    part2_factor = (3 - 2 * eps) / (1 - 2 * eps)
    comparison = (1 - 2 * eps) / (3 - 2 * eps)
    threshold = math.log(2) / (2 * math.pi + math.log(2))
    out = {
        "g": g,
        "eps": eps,
        "half_collar_width": width,
        "boundary_window": window,
        "jammes_case1": jammes_case1,
        "jammes_case2": jammes_case2,
        "jammes_bound": jammes_bound,
        "part2_factor_small": 2.0,
        "part2_factor": part2_factor,
        "comparison_constant": comparison,
        "cheeger_threshold": threshold,
        "cheeger_bound": min(comparison, 1.0) * (threshold - eps),
    }
    if widths is not None:
        out["widths_ok"] = all(w >= width for w in np.atleast_1d(widths))
    if boundary_length is not None:
        out["boundary_in_window"] = window[0] <= boundary_length <= window[1]
    return out


def report_record(name: str, report: ConstantsReport, sigma1: float | None = None) -> dict:
    rec = {
        "surface": name,
        "h_C_upper": report.h_C_upper,
        "h_J_upper": report.h_J_upper,
        "H_upper": report.H_upper,
        "H_over_H_plus_1": report.geodesic_lower,
        "H_certified": report.H_certified,
        "geodesic_lower_consistent": report.geodesic_lower_consistent(),
        "witness_h_C": report.h_C_witness,
        "witness_h_J": report.h_J_witness,
        "witness_H": report.H_witness,
    }
    if sigma1 is not None:
        rec["sigma1"] = sigma1
        rec["jammes_slack"] = jammes_check(sigma1, report, warn=False)
    return rec
