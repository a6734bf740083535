"""Triangulated hyperbolic surfaces from pants decompositions.

Each pair of pants is two copies of a right-angled hexagon realised in the
hyperboloid model.  The hexagons are fan-triangulated, refined by geodesic
midpoint subdivision, then glued along seams and cuffs.  The mesh keeps
per-face chart coordinates so it can be refined again later, but every
consumer downstream only needs the intrinsic edge lengths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .hyp_trig import hexagon
from .kernels import face_geometry

MIN_LEVEL = 2
MAX_LEVEL = 9
GEOMETRIES = ("hyperbolic", "euclidean")


class SurfaceError(ValueError):
    """Invalid pants graph, coordinates, or mesh request."""


# -- pants graph ----------------------------------------------------------


@dataclass(frozen=True)
class PantsGraph:
    pants: int
    gluings: tuple
    boundary_slots: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "gluings", tuple((tuple(map(int, a)), tuple(map(int, b))) for a, b in self.gluings)
        )
        object.__setattr__(self, "boundary_slots", tuple(tuple(map(int, s)) for s in self.boundary_slots))


@dataclass(frozen=True)
class FNCoordinates:
    cuff_lengths: tuple
    twists: tuple
    boundary_lengths: tuple

    def __post_init__(self):
        for name in ("cuff_lengths", "twists", "boundary_lengths"):
            object.__setattr__(self, name, tuple(float(x) for x in getattr(self, name)))


def validate_graph(graph: PantsGraph) -> tuple[int, int]:
    """Genus and boundary count of a pants graph.

    Raises
    ------
    SurfaceError
        On reused or out-of-range slots, boundary slots that do not match the
        unglued slots, a disconnected gluing graph, or a non-integral genus.
    """
    P = graph.pants
    if P < 1:
        raise SurfaceError("need at least one pair of pants")
    seen = set()

    def claim(slot, what):
        p, s = slot
        if not (0 <= p < P and 0 <= s < 3):
            raise SurfaceError(f"{what} slot {slot} out of range")
        if slot in seen:
            raise SurfaceError(f"slot {slot} used more than once")
        seen.add(slot)

    for a, b in graph.gluings:
        claim(a, "gluing")
        claim(b, "gluing")
    glued = set(seen)
    for s in graph.boundary_slots:
        claim(s, "boundary")
    free = {(p, s) for p in range(P) for s in range(3)} - glued
    if free != set(graph.boundary_slots):
        raise SurfaceError(f"unglued slots {sorted(free)} differ from boundary slots {list(graph.boundary_slots)}")

    parent = list(range(P))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (p, _), (q, _) in graph.gluings:
        parent[find(p)] = find(q)
    if len({find(p) for p in range(P)}) != 1:
        raise SurfaceError("gluing graph is disconnected")

    n = len(graph.boundary_slots)
    twice_g = P + 2 - n
    if twice_g < 0 or twice_g % 2:
        raise SurfaceError(f"no integer genus for {P} pants and {n} boundary components")
    return twice_g // 2, n


def slot_lengths(graph: PantsGraph, coords: FNCoordinates) -> dict:
    if len(coords.cuff_lengths) != len(graph.gluings) or len(coords.twists) != len(graph.gluings):
        raise SurfaceError("one (length, twist) pair is needed per gluing")
    if len(coords.boundary_lengths) != len(graph.boundary_slots):
        raise SurfaceError("one length is needed per boundary slot")
    out = {}
    for (a, b), length in zip(graph.gluings, coords.cuff_lengths):
        out[a] = out[b] = length
    for s, length in zip(graph.boundary_slots, coords.boundary_lengths):
        out[s] = length
    for s, length in out.items():
        if not (math.isfinite(length) and length > 0):
            raise SurfaceError(f"length at slot {s} must be positive, got {length}")
    return out


# -- hyperboloid / plane primitives ---------------------------------------


def minkowski(p, q):
    return p[..., 0] * q[..., 0] + p[..., 1] * q[..., 1] - p[..., 2] * q[..., 2]


def distance(p, q, geometry="hyperbolic"):
    """Distance between points; hyperbolic uses the chord form, stable for close points."""
    d = p - q
    if geometry == "euclidean":
        return np.sqrt((d * d).sum(axis=-1))
    chord2 = np.maximum(minkowski(d, d), 0.0)
    return 2.0 * np.arcsinh(0.5 * np.sqrt(chord2))


def midpoint(p, q, geometry="hyperbolic"):
    s = p + q
    if geometry == "euclidean":
        return 0.5 * s
    return s / np.sqrt(-minkowski(s, s))[..., None]


def _snap(points, radius, geometry):
    theta = np.arctan2(points[..., 1], points[..., 0])
    out = np.empty_like(points)
    if geometry == "euclidean":
        out[..., 0] = radius * np.cos(theta)
        out[..., 1] = radius * np.sin(theta)
        out[..., 2] = 0.0
    else:
        out[..., 0] = math.sinh(radius) * np.cos(theta)
        out[..., 1] = math.sinh(radius) * np.sin(theta)
        out[..., 2] = math.cosh(radius)
    return out


def hexagon_vertices(l1: float, l2: float, l3: float) -> np.ndarray:
    """Corners P0..P5 of the right-angled hexagon, side i running from P_i to P_{i+1}.

    Sides in order are the half-cuffs and seams ``l1/2, b12, l2/2, b23, l3/2, b31``.
    """
    sides = hexagon(l1, l2, l3).sides
    p = np.array([0.0, 0.0, 1.0])
    v = np.array([1.0, 0.0, 0.0])
    n = np.array([0.0, 1.0, 0.0])
    corners = [p]
    for s in sides:
        ch, sh = math.cosh(s), math.sinh(s)
        p, v = ch * p + sh * v, sh * p + ch * v
        v, n = n, -v
        corners.append(p)
    scale = max(1.0, float(np.abs(corners).max()))
    if np.abs(p - corners[0]).max() > 1e-9 * scale * scale or np.abs(v - [1.0, 0.0, 0.0]).max() > 1e-9 * scale * scale:
        raise SurfaceError(f"hexagon walk failed to close for cuffs {(l1, l2, l3)}")
    return np.array(corners[:6])


# -- subdivision ----------------------------------------------------------


def _edge_codes(faces, n_vertices):
    e = faces[:, [[1, 2], [2, 0], [0, 1]]]
    lo = np.minimum(e[..., 0], e[..., 1]).astype(np.int64)
    hi = np.maximum(e[..., 0], e[..., 1]).astype(np.int64)
    return lo * n_vertices + hi


def _subdivide(faces, coords, n_vertices, geometry, snap_radius=None):
    """One round of midpoint subdivision.

    Returns the new faces and per-face coordinates, the new vertex count, and
    the sorted parent-edge codes; the midpoint of parent edge ``k`` gets id
    ``n_vertices + k``.
    """
    codes = _edge_codes(faces, n_vertices)
    uniq, inv = np.unique(codes.ravel(), return_inverse=True)
    inv = inv.reshape(-1, 3)
    mids = n_vertices + inv  # mids[:, i] sits on the edge opposite vertex i
    mc = np.stack(
        [
            midpoint(coords[:, 1], coords[:, 2], geometry),
            midpoint(coords[:, 2], coords[:, 0], geometry),
            midpoint(coords[:, 0], coords[:, 1], geometry),
        ],
        axis=1,
    )
    if snap_radius is not None:
        on_boundary = np.bincount(inv.ravel(), minlength=uniq.size)[inv] == 1
        mc[on_boundary] = _snap(mc[on_boundary], snap_radius, geometry)
    v0, v1, v2 = faces[:, 0], faces[:, 1], faces[:, 2]
    m0, m1, m2 = mids[:, 0], mids[:, 1], mids[:, 2]
    c0, c1, c2 = coords[:, 0], coords[:, 1], coords[:, 2]
    d0, d1, d2 = mc[:, 0], mc[:, 1], mc[:, 2]
    new_faces = np.stack(
        [
            np.stack([v0, m2, m1], axis=1),
            np.stack([m2, v1, m0], axis=1),
            np.stack([m1, m0, v2], axis=1),
            np.stack([m2, m0, m1], axis=1),
        ],
        axis=1,
    ).reshape(-1, 3)
    new_coords = np.stack(
        [
            np.stack([c0, d2, d1], axis=1),
            np.stack([d2, c1, d0], axis=1),
            np.stack([d1, d0, c2], axis=1),
            np.stack([d2, d0, d1], axis=1),
        ],
        axis=1,
    ).reshape(-1, 3, 3)
    return new_faces, new_coords, n_vertices + uniq.size, uniq


def _split_pairs(pairs, labels, parent_codes, n_old):
    """Boundary pairs after subdivision: each pair (a, b) becomes (a, m), (m, b)."""
    if len(pairs) == 0:
        return pairs, labels
    codes = pairs[:, 0].astype(np.int64) * n_old + pairs[:, 1]
    m = n_old + np.searchsorted(parent_codes, codes)
    left = np.sort(np.stack([pairs[:, 0], m], axis=1), axis=1)
    right = np.sort(np.stack([m, pairs[:, 1]], axis=1), axis=1)
    new_pairs = np.stack([left, right], axis=1).reshape(-1, 2)
    return new_pairs, np.repeat(labels, 2)


# -- mesh -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    """Intrinsic triangle mesh with per-face chart coordinates.

    Attributes
    ----------
    faces : (F, 3) int array
    coords : (F, 3, 3) float array
        Corner positions in the chart of each face (hyperboloid or plane).
    chart_ids : (F,) int array
    n_vertices : int
    geometry : str
    genus, n_boundary : int
    boundary_pairs : (B, 2) int array
        Sorted vertex pairs of boundary edges.
    boundary_labels : (B,) int array
        Boundary component of each pair, in input order.
    boundary_targets : tuple
        Exact lengths of the boundary components when known.
    snap_radius : float or None
        Radius of the circle that boundary midpoints are projected to (disks).
    twist_errors : tuple
        ``|tau - rounded tau|`` per gluing.
    """

    faces: np.ndarray
    coords: np.ndarray
    chart_ids: np.ndarray
    n_vertices: int
    geometry: str
    genus: int
    n_boundary: int
    boundary_pairs: np.ndarray
    boundary_labels: np.ndarray
    boundary_targets: tuple = ()
    snap_radius: float | None = None
    twist_errors: tuple = ()
    level: int = 0
    meta: dict = field(default_factory=dict)

    @cached_property
    def _edges(self):
        codes = _edge_codes(self.faces, self.n_vertices)
        uniq, first, inv = np.unique(codes.ravel(), return_index=True, return_inverse=True)
        inv = inv.reshape(-1, 3)
        edges = np.stack([uniq // self.n_vertices, uniq % self.n_vertices], axis=1)
        # length of each edge taken from the chart of the first face that holds it
        face, corner = np.divmod(first, 3)
        a = self.coords[face, (corner + 1) % 3]
        b = self.coords[face, (corner + 2) % 3]
        lengths = distance(a, b, self.geometry)
        counts = np.bincount(inv.ravel(), minlength=uniq.size)
        return edges, lengths, inv, counts

    @property
    def edges(self) -> np.ndarray:
        return self._edges[0]

    @property
    def edge_lengths(self) -> np.ndarray:
        return self._edges[1]

    @property
    def face_edges(self) -> np.ndarray:
        """``face_edges[f, i]`` indexes the edge opposite corner ``i`` of face ``f``."""
        return self._edges[2]

    @property
    def edge_face_counts(self) -> np.ndarray:
        return self._edges[3]

    @cached_property
    def face_lengths(self) -> np.ndarray:
        return self.edge_lengths[self.face_edges]

    @cached_property
    def face_areas(self) -> np.ndarray:
        return face_geometry(self.face_lengths)[0]

    @property
    def area(self) -> float:
        return float(self.face_areas.sum())

    @cached_property
    def boundary_edge_index(self) -> np.ndarray:
        codes = self.boundary_pairs[:, 0].astype(np.int64) * self.n_vertices + self.boundary_pairs[:, 1]
        all_codes = self.edges[:, 0] * self.n_vertices + self.edges[:, 1]
        idx = np.searchsorted(all_codes, codes)
        return idx

    @cached_property
    def edge_component(self) -> np.ndarray:
        """Boundary component per edge, ``-1`` for interior edges."""
        comp = np.full(len(self.edges), -1, dtype=np.int64)
        comp[self.boundary_edge_index] = self.boundary_labels
        return comp

    @cached_property
    def boundary_vertices(self) -> np.ndarray:
        return np.unique(self.boundary_pairs)

    def boundary_lengths(self) -> np.ndarray:
        out = np.zeros(self.n_boundary)
        np.add.at(out, self.boundary_labels, self.edge_lengths[self.boundary_edge_index])
        return out

    @property
    def boundary_length(self) -> float:
        return float(self.edge_lengths[self.boundary_edge_index].sum())

    @property
    def max_edge(self) -> float:
        return float(self.edge_lengths.max())

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    def gauss_bonnet_area(self) -> float:
        return 2 * math.pi * (2 * self.genus - 2 + self.n_boundary)

    def check(self) -> list[str]:
        """Structural problems; an empty list means the mesh is valid."""
        problems = []
        f = self.faces
        if np.any((f[:, 0] == f[:, 1]) | (f[:, 1] == f[:, 2]) | (f[:, 0] == f[:, 2])):
            problems.append("degenerate face")
        L = np.sort(self.face_lengths, axis=1)
        if np.any(L[:, 0] + L[:, 1] <= L[:, 2]):
            problems.append("triangle inequality fails")
        counts = self.edge_face_counts
        if np.any(counts > 2):
            problems.append("edge with more than two faces")
        single = np.flatnonzero(counts == 1)
        if not np.array_equal(np.sort(single), np.sort(self.boundary_edge_index)):
            problems.append("boundary markers do not match single-face edges")
        if len(np.unique(f)) != self.n_vertices:
            problems.append("unused vertex ids")
        if self.snap_radius is None and self.euler_characteristic != 2 - 2 * self.genus - self.n_boundary:
            problems.append(f"Euler characteristic {self.euler_characteristic} != {2 - 2 * self.genus - self.n_boundary}")
        return problems

    def export_text(self) -> str:
        lines = [f"vertices {self.n_vertices}", f"genus {self.genus}", f"boundary_components {self.n_boundary}"]
        lines.append(f"triangles {len(self.faces)}")
        lines += [f"{a} {b} {c}" for a, b, c in self.faces]
        lines.append(f"edges {len(self.edges)}")
        comp = self.edge_component
        lines += [f"{a} {b} {length:.17g} {c}" for (a, b), length, c in zip(self.edges, self.edge_lengths, comp)]
        return "\n".join(lines) + "\n"


def refine_mesh(mesh: TriangleMesh) -> TriangleMesh:
    """Midpoint subdivision in each face's chart; faces multiply by four."""
    if mesh.coords is None or mesh.chart_ids is None:
        raise SurfaceError("mesh has no chart coordinates and cannot be refined")
    faces, coords, nv, parents = _subdivide(mesh.faces, mesh.coords, mesh.n_vertices, mesh.geometry, mesh.snap_radius)
    pairs, labels = _split_pairs(mesh.boundary_pairs, mesh.boundary_labels, parents, mesh.n_vertices)
    return TriangleMesh(
        faces=faces,
        coords=coords,
        chart_ids=np.repeat(mesh.chart_ids, 4),
        n_vertices=nv,
        geometry=mesh.geometry,
        genus=mesh.genus,
        n_boundary=mesh.n_boundary,
        boundary_pairs=pairs,
        boundary_labels=labels,
        boundary_targets=mesh.boundary_targets,
        snap_radius=mesh.snap_radius,
        twist_errors=mesh.twist_errors,
        level=mesh.level + 1,
        meta=dict(mesh.meta),
    )


# -- hexagon charts -------------------------------------------------------


@dataclass
class _HexChart:
    points: np.ndarray  # (V, 3)
    faces: np.ndarray
    sides: list  # six ordered vertex-id lists, side i from P_i to P_{i+1}

    def refined(self):
        coords = self.points[self.faces]
        nv = len(self.points)
        faces, coords, new_nv, parents = _subdivide(self.faces, coords, nv, "hyperbolic")
        pts = np.zeros((new_nv, 3))
        pts[faces.ravel()] = coords.reshape(-1, 3)
        sides = []
        for side in self.sides:
            a = np.asarray(side[:-1], dtype=np.int64)
            b = np.asarray(side[1:], dtype=np.int64)
            m = nv + np.searchsorted(parents, np.minimum(a, b) * nv + np.maximum(a, b))
            out = np.empty(2 * len(side) - 1, dtype=np.int64)
            out[0::2] = side
            out[1::2] = m
            sides.append(out)
        return _HexChart(pts, faces, sides)

    def max_edge(self) -> float:
        c = self.points[self.faces]
        return float(
            max(
                distance(c[:, 0], c[:, 1]).max(),
                distance(c[:, 1], c[:, 2]).max(),
                distance(c[:, 2], c[:, 0]).max(),
            )
        )


def _hex_chart(l1, l2, l3) -> _HexChart:
    pts = hexagon_vertices(l1, l2, l3)
    faces = np.array([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5]], dtype=np.int64)
    sides = [np.array([i, (i + 1) % 6], dtype=np.int64) for i in range(6)]
    return _HexChart(pts, faces, sides)


def _charts_at_level(cuffs, level):
    charts = []
    for c in cuffs:
        ch = _hex_chart(*c)
        for _ in range(level):
            ch = ch.refined()
        charts.append(ch)
    return charts


def choose_level(cuffs, resolution) -> int:
    """Smallest common subdivision level with every edge at most ``resolution``."""
    level = 0
    charts = [_hex_chart(*c) for c in cuffs]
    while max(ch.max_edge() for ch in charts) > resolution or level < MIN_LEVEL:
        if level >= MAX_LEVEL:
            raise SurfaceError(f"resolution {resolution} needs more than {MAX_LEVEL} subdivisions")
        charts = [ch.refined() for ch in charts]
        level += 1
    return level


def build_mesh(graph: PantsGraph, coords: FNCoordinates, resolution: float, level: int | None = None) -> TriangleMesh:
    """Glue hexagon charts into a mesh of the surface described by ``graph`` and ``coords``.

    Twists are rounded to the nearest multiple of the cuff spacing; the
    rounding errors are kept on the mesh.
    """
    genus, n_boundary = validate_graph(graph)
    lengths = slot_lengths(graph, coords)
    if not resolution > 0:
        raise SurfaceError(f"resolution must be positive, got {resolution}")
    shortest = min(lengths.values())
    if not resolution < shortest / 4:
        raise SurfaceError(f"resolution {resolution} must be below a quarter of the shortest cuff ({shortest})")
    cuffs = [tuple(lengths[(p, s)] for s in range(3)) for p in range(graph.pants)]
    if level is None:
        level = choose_level(cuffs, resolution)
    charts = _charts_at_level(cuffs, level)

    nv_hex = len(charts[0].points)
    P = graph.pants
    total = 2 * P * nv_hex
    parent = np.arange(total)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    def gid(p, copy, local):
        return (2 * p + copy) * nv_hex + local

    # the two hexagons of a pants share their seams
    for p, ch in enumerate(charts):
        for side in (1, 3, 5):
            for v in ch.sides[side]:
                union(gid(p, 0, v), gid(p, 1, v))

    def loop(p, s):
        side = charts[p].sides[2 * s]
        return [gid(p, 0, v) for v in side] + [gid(p, 1, v) for v in side[-2:0:-1]]

    twist_errors = []
    for ((p, s), (q, t)), length, tau in zip(graph.gluings, coords.cuff_lengths, coords.twists):
        U, W = loop(p, s), loop(q, t)
        N = len(U)
        h = length / N
        shift = round(tau / h)
        twist_errors.append(abs(tau - shift * h))
        for j in range(N):
            union(U[j], W[(shift - j) % N])

    roots = np.array([find(x) for x in range(total)])
    _, relabel = np.unique(roots, return_inverse=True)

    faces, fcoords, chart_ids = [], [], []
    for p, ch in enumerate(charts):
        for copy in (0, 1):
            f = ch.faces if copy == 0 else ch.faces[:, [0, 2, 1]]
            faces.append(relabel[gid(p, copy, f)])
            fcoords.append(ch.points[f])
            chart_ids.append(np.full(len(f), 2 * p + copy))
    faces = np.concatenate(faces)
    fcoords = np.concatenate(fcoords)

    pairs, labels = [], []
    for b, (p, s) in enumerate(graph.boundary_slots):
        U = relabel[loop(p, s)]
        for j in range(len(U)):
            pairs.append(sorted((U[j], U[(j + 1) % len(U)])))
            labels.append(b)
    n_vertices = int(relabel.max()) + 1
    return TriangleMesh(
        faces=faces.astype(np.int64),
        coords=fcoords,
        chart_ids=np.concatenate(chart_ids),
        n_vertices=n_vertices,
        geometry="hyperbolic",
        genus=genus,
        n_boundary=n_boundary,
        boundary_pairs=np.array(pairs, dtype=np.int64).reshape(-1, 2),
        boundary_labels=np.array(labels, dtype=np.int64),
        boundary_targets=tuple(coords.boundary_lengths),
        twist_errors=tuple(twist_errors),
        level=level,
        meta={"resolution": resolution},
    )


def build_disk_mesh(radius: float, resolution: float, geometry: str = "hyperbolic", level: int | None = None) -> TriangleMesh:
    """Geodesic disk of the given radius in a polar chart, boundary snapped to the circle."""
    if geometry not in GEOMETRIES:
        raise SurfaceError(f"geometry must be one of {GEOMETRIES}")
    if not radius > 0 or not resolution > 0:
        raise SurfaceError("radius and resolution must be positive")
    theta = np.arange(6) * math.pi / 3
    ring = _snap(np.stack([np.cos(theta), np.sin(theta), np.zeros(6)], axis=1), radius, geometry)
    center = np.array([0.0, 0.0, 0.0 if geometry == "euclidean" else 1.0])
    pts = np.vstack([center, ring])
    faces = np.array([[0, 1 + k, 1 + (k + 1) % 6] for k in range(6)], dtype=np.int64)
    pairs = np.sort(faces[:, 1:], axis=1)
    mesh = TriangleMesh(
        faces=faces,
        coords=pts[faces],
        chart_ids=np.zeros(6, dtype=np.int64),
        n_vertices=7,
        geometry=geometry,
        genus=0,
        n_boundary=1,
        boundary_pairs=pairs,
        boundary_labels=np.zeros(6, dtype=np.int64),
        boundary_targets=(2 * math.pi * (radius if geometry == "euclidean" else math.sinh(radius)),),
        snap_radius=radius,
        meta={"resolution": resolution, "radius": radius},
    )
    while (level is None and (mesh.max_edge > resolution or mesh.level < MIN_LEVEL)) or (
        level is not None and mesh.level < level
    ):
        if mesh.level >= MAX_LEVEL:
            raise SurfaceError(f"resolution {resolution} needs more than {MAX_LEVEL} subdivisions")
        mesh = refine_mesh(mesh)
    return mesh


# -- spec files -----------------------------------------------------------


@dataclass(frozen=True)
class SurfaceSpec:
    graph: PantsGraph | None
    coords: FNCoordinates | None
    resolution: float | None
    disk: dict | None = None
    name: str = ""

    def build(self, resolution: float | None = None) -> TriangleMesh:
        res = resolution if resolution is not None else self.resolution
        if res is None:
            raise SurfaceError("no resolution given")
        if self.disk is not None:
            return build_disk_mesh(
                float(self.disk.get("radius", 1.0)), res, self.disk.get("geometry", "hyperbolic")
            )
        return build_mesh(self.graph, self.coords, res)

    @property
    def genus(self) -> int:
        return 0 if self.disk is not None else validate_graph(self.graph)[0]


def parse_surface_spec(text: str, name: str = "") -> SurfaceSpec:
    """Parse a JSON surface description.

    Pants surfaces use ``pants``, ``gluings`` (``[[p, s], [q, t], length, twist]``)
    and ``boundaries`` (``[p, s, length]``); disks use ``disk``
    (``{"radius": R, "geometry": "hyperbolic" | "euclidean"}``).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceError(f"{name or 'spec'}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SurfaceError("surface spec must be a JSON object")
    res = data.get("resolution")
    res = float(res) if res is not None else None
    try:
        if "disk" in data:
            return SurfaceSpec(None, None, res, disk=dict(data["disk"]), name=name)
        gl = data.get("gluings", [])
        bd = data.get("boundaries", [])
        graph = PantsGraph(
            pants=int(data["pants"]),
            gluings=tuple((tuple(g[0]), tuple(g[1])) for g in gl),
            boundary_slots=tuple((b[0], b[1]) for b in bd),
        )
        coords = FNCoordinates(
            cuff_lengths=tuple(g[2] for g in gl),
            twists=tuple(g[3] if len(g) > 3 else 0.0 for g in gl),
            boundary_lengths=tuple(b[2] for b in bd),
        )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise SurfaceError(f"{name or 'spec'}: malformed surface record ({exc!r})") from exc
    validate_graph(graph)
    slot_lengths(graph, coords)
    return SurfaceSpec(graph, coords, res, name=name)


def load_surface_spec(path) -> SurfaceSpec:
    path = Path(path)
    return parse_surface_spec(path.read_text(encoding="utf-8"), name=path.name)


def surface_from_slots(pants: int, gluings, boundaries) -> tuple[PantsGraph, FNCoordinates]:
    """Graph and coordinates from the same list shapes the spec files use."""
    graph = PantsGraph(pants, tuple((tuple(a), tuple(b)) for a, b, *_ in gluings), tuple((p, s) for p, s, _ in boundaries))
    coords = FNCoordinates(
        tuple(g[2] for g in gluings), tuple(g[3] for g in gluings), tuple(b[2] for b in boundaries)
    )
    return graph, coords
