"""Brute-force Voronoi adjacency oracle.

Independent slow route used to validate the incremental construction.  For
each pair the shared boundary piece is the part of their bisector closer to
the pair than to every other point; that is a one-dimensional interval cut
by one linear constraint per remaining point, solved here in exact rational
arithmetic (binary floats convert to Fraction losslessly).  O(n) per pair,
O(n^3) per configuration; intended for small inputs only.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .delaunay import clip_cell_to_box
from .primitives import Box, PointConfiguration


def _face_interval(pts, i, j):
    """Exact parameter interval of the (i, j) shared face on their bisector.

    The bisector is parameterized as m + t*d with m the midpoint and d the
    (unnormalized) perpendicular of p_j - p_i.  Returns (tmin, tmax) as
    Fractions or +-inf, or None when some constraint is infeasible.
    """
    pix, piy = Fraction(pts[i][0]), Fraction(pts[i][1])
    pjx, pjy = Fraction(pts[j][0]), Fraction(pts[j][1])
    mx, my = (pix + pjx) / 2, (piy + pjy) / 2
    dx, dy = pjy - piy, pix - pjx
    tmin, tmax = None, None  # None encodes unbounded
    for k in range(len(pts)):
        if k == i or k == j:
            continue
        pkx, pky = Fraction(pts[k][0]), Fraction(pts[k][1])
        ax, ay = pkx - pix, pky - piy
        c = pkx * pkx + pky * pky - pix * pix - piy * piy
        denom = 2 * (ax * dx + ay * dy)
        offset = c - 2 * (ax * mx + ay * my)
        if denom == 0:
            if offset < 0:
                return None
            continue
        t = offset / denom
        if denom > 0:
            if tmax is None or t < tmax:
                tmax = t
        else:
            if tmin is None or t > tmin:
                tmin = t
        if tmin is not None and tmax is not None and tmin > tmax:
            return None
    return tmin, tmax, dx * dx + dy * dy


def oracle_adjacency(config: PointConfiguration, eps_face: float | None = None):
    """Set of adjacent index pairs via exhaustive bisector clipping."""
    pts = config.points
    n = len(pts)
    if eps_face is None:
        eps_face = 1e-9 * config.window.half_side
    eps2 = Fraction(eps_face) * Fraction(eps_face)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            res = _face_interval(pts, i, j)
            if res is None:
                continue
            tmin, tmax, d2 = res
            if tmin is None or tmax is None:
                edges.add((i, j))  # unbounded face has infinite length
                continue
            span = tmax - tmin
            if span > 0 and span * span * d2 > eps2:
                edges.add((i, j))
    return edges


def oracle_cell(points: np.ndarray, i: int, frame: Box):
    """Cell polygon of point i clipped against every other point's bisector."""
    others = [points[j] for j in range(len(points)) if j != i]
    return clip_cell_to_box(points[i], others, frame)


def empty_disk_witness(config: PointConfiguration, i: int, j: int):
    """A disk through points i and j whose open interior avoids all others.

    Centers the disk on the midpoint of the shared face; returns
    (center, radius, worst_margin) with worst_margin the minimum over other
    points of dist(other, center) - radius (positive means strictly empty),
    or None when the pair shares no face.
    """
    pts = config.points
    res = _face_interval(pts, i, j)
    if res is None:
        return None
    tmin, tmax, _ = res
    if tmin is None and tmax is None:
        t = Fraction(0)
    elif tmin is None:
        t = tmax - 1
    elif tmax is None:
        t = tmin + 1
    else:
        if tmax <= tmin:
            return None
        t = (tmin + tmax) / 2
    t = float(t)
    pix, piy = pts[i]
    pjx, pjy = pts[j]
    cx = (pix + pjx) / 2.0 + t * (pjy - piy)
    cy = (piy + pjy) / 2.0 + t * (pix - pjx)
    r = math.hypot(cx - pix, cy - piy)
    margin = math.inf
    for k in range(len(pts)):
        if k in (i, j):
            continue
        margin = min(margin, math.hypot(cx - pts[k][0], cy - pts[k][1]) - r)
    return (cx, cy), r, margin
