"""Axis-aligned boxes, balls, rounded boxes, and point configurations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidConfigurationError


@dataclass(frozen=True)
class Box:
    """Axis-aligned cube `center + [-half_side, half_side]^d`."""

    center: tuple
    half_side: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if not self.half_side > 0:
            raise InvalidConfigurationError("box half_side must be positive")

    @classmethod
    def lattice_cube(cls, z, ell: float) -> "Box":
        """The cube `z*ell + [-ell/2, ell/2]^d` for a lattice index z."""
        return cls(tuple(float(zi) * ell for zi in z), ell / 2.0)

    @classmethod
    def corner_cube(cls, x, side: float) -> "Box":
        """The cube `x*side + [0, side]^d` for a lattice index x."""
        return cls(tuple((float(xi) + 0.5) * side for xi in x), side / 2.0)

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def side(self) -> float:
        return 2.0 * self.half_side

    @property
    def lo(self) -> np.ndarray:
        return np.asarray(self.center) - self.half_side

    @property
    def hi(self) -> np.ndarray:
        return np.asarray(self.center) + self.half_side

    def volume(self) -> float:
        return self.side ** self.dimension

    def contains(self, point) -> bool:
        p = np.asarray(point, dtype=float)
        return bool(np.all(np.abs(p - np.asarray(self.center)) <= self.half_side))

    def contains_points(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            return np.zeros(0, dtype=bool)
        return np.all(np.abs(pts - np.asarray(self.center)) <= self.half_side, axis=1)

    def count(self, points: np.ndarray) -> int:
        return int(np.count_nonzero(self.contains_points(points)))

    def contains_ball(self, center, radius: float) -> bool:
        c = np.asarray(center, dtype=float)
        return bool(
            np.all(c - radius >= self.lo - 0.0) and np.all(c + radius <= self.hi + 0.0)
        )

    def contains_box(self, other: "Box") -> bool:
        return bool(
            np.all(other.lo >= self.lo) and np.all(other.hi <= self.hi)
        )

    def dist_to_point(self, point) -> float:
        """Euclidean distance from a point to the (closed) box; 0 inside."""
        p = np.asarray(point, dtype=float)
        gap = np.maximum(np.abs(p - np.asarray(self.center)) - self.half_side, 0.0)
        return float(math.sqrt(float(np.dot(gap, gap))))

    def dist_to_points(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        gap = np.maximum(np.abs(pts - np.asarray(self.center)) - self.half_side, 0.0)
        return np.sqrt(np.sum(gap * gap, axis=1))

    def shrink(self, margin: float) -> "Box":
        if margin >= self.half_side:
            raise InvalidConfigurationError("margin would empty the box")
        return Box(self.center, self.half_side - margin)

    def grow(self, margin: float) -> "Box":
        return Box(self.center, self.half_side + margin)


@dataclass(frozen=True)
class Ball:
    """Euclidean ball; `closed` selects closed vs open membership."""

    center: tuple
    radius: float
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if self.radius < 0:
            raise InvalidConfigurationError("ball radius must be nonnegative")

    def contains(self, point) -> bool:
        p = np.asarray(point, dtype=float)
        d2 = float(np.sum((p - np.asarray(self.center)) ** 2))
        r2 = self.radius * self.radius
        return d2 <= r2 if self.closed else d2 < r2

    def count(self, points: np.ndarray) -> int:
        pts = np.asarray(points, dtype=float)
        if pts.size == 0:
            return 0
        d2 = np.sum((pts - np.asarray(self.center)) ** 2, axis=1)
        r2 = self.radius * self.radius
        return int(np.count_nonzero(d2 <= r2 if self.closed else d2 < r2))


@dataclass(frozen=True)
class ThickenedSet:
    """Open r-neighborhood of a box: points at Euclidean distance < thickness."""

    core: Box
    thickness: float

    def __post_init__(self):
        if not self.thickness > 0:
            raise InvalidConfigurationError("thickness must be positive")

    def contains(self, point) -> bool:
        return self.core.dist_to_point(point) < self.thickness

    def bounding_box(self) -> Box:
        return self.core.grow(self.thickness)

    def boundary_points(self, step: float) -> np.ndarray:
        """Points sampled along the boundary (d = 2): four straight offset
        segments plus four corner arcs, spaced at most `step` apart."""
        if self.core.dimension != 2:
            raise InvalidConfigurationError("boundary sampling implemented for d = 2")
        cx, cy = self.core.center
        h = self.core.half_side
        r = self.thickness
        pts = []
        n_side = max(2, int(math.ceil(2.0 * h / step)) + 1)
        ts = np.linspace(-h, h, n_side)
        pts.append(np.column_stack([cx + ts, np.full(n_side, cy + h + r)]))
        pts.append(np.column_stack([cx + ts, np.full(n_side, cy - h - r)]))
        pts.append(np.column_stack([np.full(n_side, cx + h + r), cy + ts]))
        pts.append(np.column_stack([np.full(n_side, cx - h - r), cy + ts]))
        n_arc = max(2, int(math.ceil(0.5 * math.pi * r / step)) + 1)
        for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
            base = math.atan2(sy, sx) - math.pi / 4.0
            ang = np.linspace(base, base + math.pi / 2.0, n_arc)
            pts.append(
                np.column_stack(
                    [cx + sx * h + r * np.cos(ang), cy + sy * h + r * np.sin(ang)]
                )
            )
        return np.vstack(pts)


@dataclass
class PointConfiguration:
    """A finite simple point set sampled inside a window."""

    dimension: int
    window: Box
    points: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, self.dimension)
        if pts.ndim != 2 or pts.shape[1] != self.dimension:
            raise InvalidConfigurationError(
                f"points must have shape (n, {self.dimension})"
            )
        if self.window.dimension != self.dimension:
            raise InvalidConfigurationError("window dimension mismatch")
        if pts.shape[0]:
            if not np.all(np.isfinite(pts)):
                raise InvalidConfigurationError("points must be finite")
            if not np.all(self.window.contains_points(pts)):
                raise InvalidConfigurationError("point outside window")
            order = np.lexsort(pts.T[::-1])
            sorted_pts = pts[order]
            if np.any(np.all(sorted_pts[1:] == sorted_pts[:-1], axis=1)):
                raise InvalidConfigurationError("duplicate points")
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]

    def count_in(self, region) -> int:
        return region.count(self.points)

    def translate(self, shift) -> "PointConfiguration":
        """Shift all points and the window by a common vector."""
        s = np.asarray(shift, dtype=float)
        win = Box(tuple(np.asarray(self.window.center) + s), self.window.half_side)
        return PointConfiguration(self.dimension, win, self.points + s)


def write_points_file(path, config: PointConfiguration) -> None:
    """Line-oriented point file: `d=`, `window=`, one point per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"d={config.dimension}\n")
        center = " ".join(repr(c) for c in config.window.center)
        fh.write(f"window={center} {config.window.half_side!r}\n")
        for row in config.points:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_points_file(path) -> PointConfiguration:
    """Parse a point file; duplicates and out-of-window points are rejected."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("d=") or not lines[1].startswith("window="):
        raise InvalidConfigurationError("point file must start with d= and window= lines")
    try:
        dim = int(lines[0][2:])
        wparts = [float(v) for v in lines[1][len("window="):].split()]
    except ValueError as exc:
        raise InvalidConfigurationError(f"bad header: {exc}") from exc
    if len(wparts) != dim + 1:
        raise InvalidConfigurationError("window line needs d coordinates plus half side")
    window = Box(tuple(wparts[:dim]), wparts[dim])
    rows = []
    for ln in lines[2:]:
        vals = [float(v) for v in ln.split()]
        if len(vals) != dim:
            raise InvalidConfigurationError(f"point line has {len(vals)} coordinates")
        rows.append(vals)
    pts = np.asarray(rows, dtype=float) if rows else np.zeros((0, dim))
    return PointConfiguration(dim, window, pts)
