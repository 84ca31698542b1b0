"""Exact 2-D Delaunay/Voronoi construction and rooted geometric regions.

The triangulation is built by randomized-order incremental insertion with
filtered-exact predicates; Voronoi cells are read off the triangle stars via
circumcenters.  Adjacency between nuclei is *not* the raw triangulation
edge set: a pair is adjacent only when their cells share a boundary segment
of positive length, so cocircular degeneracies (e.g. the integer lattice)
yield the shared-face graph rather than the triangulated one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    InvalidConfigurationError,
    InvalidInputError,
    UnboundedCellError,
    UnsupportedDimensionError,
)
from .predicates import circumcenter, incircle, orient2d
from .primitives import Ball, Box, PointConfiguration

GHOST = -1

# Fraction of the window half-side below which a shared Voronoi boundary
# segment is treated as degenerate (zero (d-1)-measure).
FACE_TOLERANCE_FACTOR = 1e-9


class _Triangulation:
    """Incremental triangulation over indexed points; hull closed by a ghost."""

    __slots__ = ("px", "py", "tri", "edge", "free", "recent")

    def __init__(self, px, py):
        self.px = px
        self.py = py
        self.tri = []
        self.edge = {}
        self.free = []
        self.recent = 0

    # -- topology maintenance -------------------------------------------

    def _new_tri(self, a, b, c):
        if self.free:
            tid = self.free.pop()
            self.tri[tid] = (a, b, c)
        else:
            tid = len(self.tri)
            self.tri.append((a, b, c))
        e = self.edge
        e[(a, b)] = tid
        e[(b, c)] = tid
        e[(c, a)] = tid
        return tid

    def _kill(self, tid):
        a, b, c = self.tri[tid]
        e = self.edge
        del e[(a, b)]
        del e[(b, c)]
        del e[(c, a)]
        self.tri[tid] = None
        self.free.append(tid)

    # -- predicates ------------------------------------------------------

    def _bad(self, tid, qx, qy):
        """Whether the (possibly ghost) triangle's circumregion contains q."""
        a, b, c = self.tri[tid]
        px, py = self.px, self.py
        if c == GHOST:
            ax, ay = px[a], py[a]
            bx, by = px[b], py[b]
            o = orient2d(ax, ay, bx, by, qx, qy)
            if o > 0:
                return True
            if o < 0:
                return False
            # Collinear: the ghost region includes the open hull segment.
            ex, ey = bx - ax, by - ay
            t = (qx - ax) * ex + (qy - ay) * ey
            return 0.0 < t < ex * ex + ey * ey
        return (
            incircle(px[a], py[a], px[b], py[b], px[c], py[c], qx, qy) > 0
        )

    # -- point location ---------------------------------------------------

    def _locate_bad(self, qx, qy):
        """Find any triangle whose circumregion contains q."""
        px, py = self.px, self.py
        tri = self.tri
        edge = self.edge
        tid = self.recent
        if tri[tid] is None or tri[tid][2] == GHOST:
            tid = next(
                i for i, t in enumerate(tri) if t is not None and t[2] != GHOST
            )
        seen = set()
        while tid not in seen:
            seen.add(tid)
            a, b, c = tri[tid]
            if c == GHOST:
                return self._scan_ghost_ring(tid, qx, qy)
            ax, ay = px[a], py[a]
            bx, by = px[b], py[b]
            cx, cy = px[c], py[c]
            if orient2d(ax, ay, bx, by, qx, qy) < 0:
                tid = edge[(b, a)]
            elif orient2d(bx, by, cx, cy, qx, qy) < 0:
                tid = edge[(c, b)]
            elif orient2d(cx, cy, ax, ay, qx, qy) < 0:
                tid = edge[(a, c)]
            else:
                return tid  # q in the closed triangle, hence in its open disk
        return self._scan_all(qx, qy)

    def _scan_ghost_ring(self, g0, qx, qy):
        edge = self.edge
        tri = self.tri
        g = g0
        while True:
            if self._bad(g, qx, qy):
                return g
            u, v, _ = tri[g]
            g = edge[(GHOST, u)]
            if g == g0:
                return self._scan_all(qx, qy)

    def _scan_all(self, qx, qy):
        for tid, t in enumerate(self.tri):
            if t is not None and self._bad(tid, qx, qy):
                return tid
        raise InvalidConfigurationError("point location failed (duplicate point?)")

    # -- insertion ---------------------------------------------------------

    def insert(self, pi):
        qx, qy = self.px[pi], self.py[pi]
        seed = self._locate_bad(qx, qy)
        bad = {seed}
        stack = [seed]
        ring = []
        tri = self.tri
        edge = self.edge
        while stack:
            t = stack.pop()
            a, b, c = tri[t]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = edge[(v, u)]
                if nb in bad:
                    continue
                if self._bad(nb, qx, qy):
                    bad.add(nb)
                    stack.append(nb)
                else:
                    ring.append((u, v))
        for t in bad:
            self._kill(t)
        recent = None
        for u, v in ring:
            if u == GHOST:
                self._new_tri(v, pi, GHOST)
            elif v == GHOST:
                self._new_tri(pi, u, GHOST)
            else:
                recent = self._new_tri(u, v, pi)
        if recent is not None:
            self.recent = recent

    # -- star traversal ----------------------------------------------------

    def fan(self, i, start):
        """Incident triangles in CCW order around vertex i.

        Returns (list of tids, on_hull).  For hull vertices the fan is the
        open chain of real triangles from one hull edge to the other.
        """
        tri = self.tri
        edge = self.edge
        chain = [start]
        on_hull = False
        # walk CCW; the next triangle about i shares the edge (i, third)
        t = start
        while True:
            a, b, c = tri[t]
            if a == i:
                nxt_key = (i, c)
            elif b == i:
                nxt_key = (i, a)
            else:
                nxt_key = (i, b)
            t = edge[nxt_key]
            if tri[t][2] == GHOST:
                on_hull = True
                break
            if t == start:
                return chain, False
            chain.append(t)
        # walk CW from start and prepend
        t = start
        while True:
            a, b, c = tri[t]
            if a == i:
                prv_key = (b, i)
            elif b == i:
                prv_key = (c, i)
            else:
                prv_key = (a, i)
            t = edge[prv_key]
            if tri[t][2] == GHOST:
                break
            chain.insert(0, t)
        return chain, on_hull


@dataclass
class VoronoiCell:
    """One cell of the tessellation, in cyclic vertex order (d = 2)."""

    index: int
    nucleus: np.ndarray
    vertices: np.ndarray
    bounded: bool
    faces: list = field(default_factory=list)  # (neighbor index, (p, q) segment)


@dataclass
class FundamentalRegion:
    """Union of closed balls centered at the cell vertices reaching the nucleus."""

    center: np.ndarray
    balls: list

    def contains(self, point) -> bool:
        p = np.asarray(point, dtype=float)
        return any(b.contains(p) for b in self.balls)

    def max_radius(self) -> float:
        return max((b.radius for b in self.balls), default=0.0)

    def inside_box(self, box: Box) -> bool:
        return all(box.contains_ball(b.center, b.radius) for b in self.balls)


@dataclass
class DelaunayComplex:
    """Voronoi cells plus the positive-measure shared-face adjacency graph."""

    config: PointConfiguration
    cells: list
    neighbors: list              # per point: sorted list of adjacent indices
    edges: list                  # canonical sorted (i, j) pairs, lexicographic
    edge_face: dict              # (i, j) -> (p, q) dual boundary segment
    interior_valid: np.ndarray
    fr_radius: np.ndarray        # max vertex distance; inf for unbounded cells
    voronoi_vertices: np.ndarray

    @property
    def points(self) -> np.ndarray:
        return self.config.points

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.neighbors[i]


def _clip_halfplane(poly, a, b, c):
    """Sutherland-Hodgman step: keep {(x, y): a*x + b*y <= c}."""
    out = []
    n = len(poly)
    for k in range(n):
        x1, y1 = poly[k]
        x2, y2 = poly[(k + 1) % n]
        in1 = a * x1 + b * y1 <= c
        in2 = a * x2 + b * y2 <= c
        if in1:
            out.append((x1, y1))
        if in1 != in2:
            denom = a * (x2 - x1) + b * (y2 - y1)
            t = (c - a * x1 - b * y1) / denom
            out.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
    return out


def clip_cell_to_box(nucleus, others, box: Box):
    """Cell polygon inside `box`: the box rectangle cut by all bisectors.

    `others` is an iterable of neighbor coordinates.  Exact only where the
    true cell is determined by those neighbors; used for window-clipped
    geometry of unbounded cells and by the brute-force oracle.
    """
    lo = box.lo
    hi = box.hi
    poly = [(lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])]
    nx, ny = float(nucleus[0]), float(nucleus[1])
    for ox, oy in others:
        # |p - nucleus|^2 <= |p - other|^2  <=>  2(o-n).p <= |o|^2 - |n|^2
        a = 2.0 * (ox - nx)
        b = 2.0 * (oy - ny)
        c = ox * ox + oy * oy - nx * nx - ny * ny
        poly = _clip_halfplane(poly, a, b, c)
        if not poly:
            break
    return poly


def _segment_window_clip(p, direction, box: Box):
    """Far endpoint of the ray p + t*direction clipped near the box edge."""
    reach = 4.0 * box.half_side + float(np.linalg.norm(np.asarray(p) - np.asarray(box.center)))
    return (p[0] + direction[0] * reach, p[1] + direction[1] * reach)


def _build_degenerate(config: PointConfiguration) -> DelaunayComplex:
    """All points collinear (covers n = 1 and n = 2): slab cells, no vertices."""
    pts = config.points
    n = len(pts)
    window = config.window
    if n == 1:
        lo, hi = window.lo, window.hi
        poly = np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
        cells = [VoronoiCell(0, pts[0], poly, False, [])]
        return DelaunayComplex(
            config, cells, [[]], [], {},
            np.zeros(1, dtype=bool), np.full(1, np.inf), np.zeros((0, 2)),
        )
    direction = pts[np.argmax(np.linalg.norm(pts - pts[0], axis=1))] - pts[0]
    order = np.argsort(pts @ direction, kind="stable")
    rank = np.empty(n, dtype=int)
    rank[order] = np.arange(n)
    neighbors = [[] for _ in range(n)]
    edges = []
    edge_face = {}
    for k in range(n - 1):
        i, j = int(order[k]), int(order[k + 1])
        a, b = (i, j) if i < j else (j, i)
        edges.append((a, b))
        neighbors[i].append(j)
        neighbors[j].append(i)
        mid = (pts[i] + pts[j]) / 2.0
        perp = np.array([-direction[1], direction[0]])
        perp = perp / np.linalg.norm(perp)
        reach = 4.0 * window.half_side
        edge_face[(a, b)] = (tuple(mid - perp * reach), tuple(mid + perp * reach))
    cells = []
    for i in range(n):
        others = [pts[int(order[rank[i] + s])] for s in (-1, 1) if 0 <= rank[i] + s < n]
        poly = clip_cell_to_box(pts[i], others, window)
        cells.append(VoronoiCell(i, pts[i], np.asarray(poly), False, []))
    for a, b in edges:
        seg = edge_face[(a, b)]
        cells[a].faces.append((b, seg))
        cells[b].faces.append((a, seg))
    edges.sort()
    neighbors = [sorted(nb) for nb in neighbors]
    return DelaunayComplex(
        config, cells, neighbors, edges, edge_face,
        np.zeros(n, dtype=bool), np.full(n, np.inf), np.zeros((0, 2)),
    )


def _insertion_order(pts: np.ndarray, window: Box) -> list:
    """Deterministic snake order over a coarse grid, for short locate walks."""
    n = len(pts)
    ncell = max(1, int(math.sqrt(n / 4.0)))
    lo = window.lo
    scale = ncell / window.side
    gx = np.minimum((pts[:, 0] - lo[0]) * scale, ncell - 1).astype(int)
    gy = np.minimum((pts[:, 1] - lo[1]) * scale, ncell - 1).astype(int)
    col = np.where(gy % 2 == 0, gx, ncell - 1 - gx)
    key = np.lexsort((pts[:, 1], pts[:, 0], col, gy))
    return [int(i) for i in key]


def build_delaunay(config: PointConfiguration) -> DelaunayComplex:
    """Build Voronoi cells and the shared-face adjacency for a configuration.

    Adjacency keeps a pair only when the dual boundary segment is longer
    than FACE_TOLERANCE_FACTOR times the window half-side; a point is
    interior-valid when its cell is bounded and its fundamental region lies
    inside the window, which certifies that windowing did not distort its
    neighborhood.
    """
    if config.dimension != 2:
        raise UnsupportedDimensionError(
            f"exact construction requires d = 2, got d = {config.dimension}"
        )
    n = len(config)
    if n < 1:
        raise InvalidConfigurationError("need at least one point")
    pts = config.points
    window = config.window
    eps_face = FACE_TOLERANCE_FACTOR * window.half_side

    order = _insertion_order(pts, window) if n >= 3 else list(range(n))
    # Find a non-collinear triple to seed the triangulation.
    seed2 = None
    if n >= 3:
        i0, i1 = order[0], order[1]
        for k in range(2, n):
            i2 = order[k]
            if (
                orient2d(pts[i0, 0], pts[i0, 1], pts[i1, 0], pts[i1, 1],
                         pts[i2, 0], pts[i2, 1])
                != 0
            ):
                seed2 = k
                break
    if seed2 is None:
        return _build_degenerate(config)

    order[2], order[seed2] = order[seed2], order[2]
    px = pts[:, 0].tolist()
    py = pts[:, 1].tolist()
    i0, i1, i2 = order[0], order[1], order[2]
    if orient2d(px[i0], py[i0], px[i1], py[i1], px[i2], py[i2]) < 0:
        i1, i2 = i2, i1
    T = _Triangulation(px, py)
    T._new_tri(i0, i1, i2)
    T._new_tri(i1, i0, GHOST)
    T._new_tri(i2, i1, GHOST)
    T._new_tri(i0, i2, GHOST)
    for k in range(3, n):
        T.insert(order[k])

    # Circumcenters and one incident real triangle per point.
    cc = {}
    anchor = [None] * n
    for tid, t in enumerate(T.tri):
        if t is None or t[2] == GHOST:
            continue
        a, b, c = t
        cc[tid] = circumcenter(px[a], py[a], px[b], py[b], px[c], py[c])
        anchor[a] = anchor[b] = anchor[c] = tid

    # Candidate edges from real triangles; dual faces and the measure filter.
    raw_edges = set()
    for t in T.tri:
        if t is None or t[2] == GHOST:
            continue
        a, b, c = t
        raw_edges.add((a, b) if a < b else (b, a))
        raw_edges.add((b, c) if b < c else (c, b))
        raw_edges.add((c, a) if c < a else (a, c))

    edge_face = {}
    kept = []
    for u, v in raw_edges:
        t1 = T.edge[(u, v)]
        t2 = T.edge[(v, u)]
        g1 = T.tri[t1][2] == GHOST
        g2 = T.tri[t2][2] == GHOST
        if g1 and g2:
            continue
        if not g1 and not g2:
            p1 = cc[t1]
            p2 = cc[t2]
            length = math.hypot(p1[0] - p2[0], p1[1] - p2[1])
            if length <= eps_face:
                continue
            edge_face[(u, v)] = (p1, p2)
        else:
            real = t2 if g1 else t1
            p1 = cc[real]
            ex = px[v] - px[u]
            ey = py[v] - py[u]
            # Hull edge: the dual face is a ray along the bisector pointing
            # away from the hull.  The ghost stores the reverse of the real
            # CCW hull edge, so outward is the clockwise normal of the real
            # direction.
            if g1:
                # ghost owns (u, v): real CCW edge is (v, u)
                nx_, ny_ = -ey, ex
            else:
                # ghost owns (v, u): real CCW edge is (u, v)
                nx_, ny_ = ey, -ex
            norm = math.hypot(nx_, ny_)
            edge_face[(u, v)] = (
                p1,
                _segment_window_clip(p1, (nx_ / norm, ny_ / norm), window),
            )
        kept.append((u, v))
    kept.sort()

    neighbors = [[] for _ in range(n)]
    for u, v in kept:
        neighbors[u].append(v)
        neighbors[v].append(u)
    neighbors = [sorted(nb) for nb in neighbors]

    # Cells from the triangle stars.
    cells = []
    interior_valid = np.zeros(n, dtype=bool)
    fr_radius = np.full(n, np.inf)
    lo = window.lo
    hi = window.hi
    for i in range(n):
        chain, on_hull = T.fan(i, anchor[i])
        if on_hull:
            poly = clip_cell_to_box(pts[i], _tri_neighbors(T, chain, i), window)
            cells.append(VoronoiCell(i, pts[i], np.asarray(poly), False, []))
            continue
        ring = []
        for t in chain:
            p = cc[t]
            if not ring or (p[0] != ring[-1][0] or p[1] != ring[-1][1]):
                ring.append(p)
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring.pop()
        verts = np.asarray(ring)
        cells.append(VoronoiCell(i, pts[i], verts, True, []))
        d = np.sqrt(np.sum((verts - pts[i]) ** 2, axis=1))
        radius = float(d.max()) if len(d) else 0.0
        fr_radius[i] = radius
        ok = True
        for v, r in zip(verts, d):
            if (
                v[0] - r < lo[0] or v[0] + r > hi[0]
                or v[1] - r < lo[1] or v[1] + r > hi[1]
            ):
                ok = False
                break
        interior_valid[i] = ok

    for u, v in kept:
        seg = edge_face[(u, v)]
        cells[u].faces.append((v, seg))
        cells[v].faces.append((u, seg))

    vv = np.asarray(sorted(set(cc.values()))) if cc else np.zeros((0, 2))
    return DelaunayComplex(
        config, cells, neighbors, kept, edge_face, interior_valid, fr_radius, vv
    )


def _tri_neighbors(T, chain, i):
    """Vertices sharing a triangle with i along its (open) fan."""
    seen = set()
    for t in chain:
        for v in T.tri[t]:
            if v != i and v != GHOST and v not in seen:
                seen.add(v)
                yield (T.px[v], T.py[v])


def fundamental_region(point_index: int, complex_: DelaunayComplex) -> FundamentalRegion:
    """Union of closed balls centered at the cell's vertices through its nucleus."""
    cell = complex_.cells[point_index]
    if not cell.bounded:
        raise UnboundedCellError(f"cell of point {point_index} is unbounded")
    center = complex_.points[point_index]
    balls = [
        Ball(tuple(v), float(math.hypot(v[0] - center[0], v[1] - center[1])))
        for v in cell.vertices
    ]
    return FundamentalRegion(center, balls)


def orthant_criterion(config: PointConfiguration, lattice_range: int) -> bool:
    """Every translated open orthant at lattice points within range is occupied.

    True implies the checked cells are bounded convex polytopes at this scale.
    """
    pts = config.points
    d = config.dimension
    if len(pts) == 0:
        return False
    lo = config.window.lo
    hi = config.window.hi
    axes = []
    for a in range(d):
        lo_a = int(math.ceil(lo[a]))
        hi_a = int(math.floor(hi[a]))
        axes.append([z for z in range(lo_a, hi_a + 1) if abs(z) <= lattice_range])
    for x in itertools.product(*axes):
        rel = pts - np.asarray(x, dtype=float)
        for sigma in itertools.product((-1.0, 1.0), repeat=d):
            if not np.any(np.all(rel * np.asarray(sigma) > 0.0, axis=1)):
                return False
    return True


def lattice_shell(d: int) -> list:
    """Integer points with uniform norm exactly d (the witness index set)."""
    out = []
    for z in itertools.product(range(-d, d + 1), repeat=d):
        if max(abs(c) for c in z) == d:
            out.append(z)
    return out


def cube_in_ball_witness(ball: Ball, ell: float, d: int):
    """Search the shell |z|_inf = d for a cube z*ell + [-ell/2, ell/2]^d
    strictly inside the open ball; the origin must lie on the ball boundary.

    Guaranteed to succeed when radius >= 3 * ell * d^2.
    """
    if ell <= 0 or d < 1:
        raise InvalidInputError("ell and d must be positive")
    center = np.asarray(ball.center, dtype=float)
    if len(center) != d:
        raise InvalidInputError("ball dimension mismatch")
    r = ball.radius
    norm = float(np.linalg.norm(center))
    if abs(norm - r) > 1e-9 * max(1.0, r):
        raise InvalidInputError("origin must lie on the ball boundary")
    for z in lattice_shell(d):
        c = np.asarray(z, dtype=float) * ell
        # farthest corner of the cube from the ball center
        far = np.abs(c - center) + ell / 2.0
        if float(np.dot(far, far)) < r * r:
            return z
    return None
