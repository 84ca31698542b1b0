"""Seeded samplers for stationary point processes and rooted-sample routes.

Implements homogeneous Poisson, Matern cluster, Matern type-II hard-core,
and finite-volume Gibbs sampling via birth/death/move Metropolis-Hastings,
plus the two routes to configurations seen from a typical point: exact
Poisson rooting (independent sample with the origin adjoined) and the
spatial-average route that turns stationary samples into rooted averages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidConfigurationError,
    InvalidSpecError,
    RejectedSpecError,
    UnsupportedProcessError,
)
from .geometry import Box, PointConfiguration, build_delaunay
from .geometry.delaunay import DelaunayComplex
from .rng import RngStream


@dataclass(frozen=True)
class PairPotential:
    """Tabulated radial pair interaction with linear interpolation.

    Values may be +inf (hard core) but never NaN or -inf; interactions
    vanish beyond r_max.
    """

    r: tuple
    v: tuple
    r_max: float

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or len(r) < 1:
            raise RejectedSpecError("potential table must be two equal columns")
        if np.any(np.diff(r) <= 0):
            raise RejectedSpecError("potential radii must be increasing")
        if np.any(np.isnan(v)) or np.any(np.isneginf(v)):
            raise RejectedSpecError("potential table unbounded below")
        if not (self.r_max > 0) or not math.isfinite(self.r_max):
            raise RejectedSpecError("interaction cutoff r_max must be finite positive")
        object.__setattr__(self, "r", tuple(float(x) for x in r))
        object.__setattr__(self, "v", tuple(float(x) for x in v))

    @classmethod
    def strauss(cls, strength: float, radius: float) -> "PairPotential":
        """Constant repulsion below `radius`, zero beyond."""
        eps = 1e-12 * radius
        return cls(
            (0.0, radius - eps, radius), (strength, strength, 0.0), radius
        )

    @classmethod
    def hard_core(cls, radius: float) -> "PairPotential":
        eps = 1e-12 * radius
        return cls((0.0, radius - eps, radius), (math.inf, math.inf, 0.0), radius)

    def __call__(self, dist: float) -> float:
        if dist >= self.r_max:
            return 0.0
        r = self.r
        if dist <= r[0]:
            return self.v[0]
        if dist >= r[-1]:
            return self.v[-1]
        k = np.searchsorted(self.r, dist) - 1
        r0, r1 = r[k], r[k + 1]
        v0, v1 = self.v[k], self.v[k + 1]
        if math.isinf(v0) or math.isinf(v1):
            return math.inf if dist < r1 else v1
        w = (dist - r0) / (r1 - r0)
        return v0 + w * (v1 - v0)

    def energy_against(self, x: np.ndarray, others: np.ndarray) -> float:
        """Total interaction of a point with a set of points (cutoff applied)."""
        if len(others) == 0:
            return 0.0
        d = np.sqrt(np.sum((others - x) ** 2, axis=1))
        d = d[d < self.r_max]
        total = 0.0
        for dist in d:
            val = self(float(dist))
            if math.isinf(val):
                return math.inf
            total += val
        return total


@dataclass(frozen=True)
class ProcessSpec:
    """Specification of a stationary point process to sample."""

    variant: str
    params: dict = field(default_factory=dict)

    @classmethod
    def poisson(cls, intensity: float) -> "ProcessSpec":
        if not intensity > 0:
            raise InvalidSpecError("poisson intensity must be positive")
        return cls("poisson", {"intensity": float(intensity)})

    @classmethod
    def matern_cluster(cls, parent_intensity, mean_offspring, cluster_radius):
        if min(parent_intensity, mean_offspring, cluster_radius) <= 0:
            raise InvalidSpecError("matern cluster parameters must be positive")
        return cls(
            "matern_cluster",
            {
                "parent_intensity": float(parent_intensity),
                "mean_offspring": float(mean_offspring),
                "cluster_radius": float(cluster_radius),
            },
        )

    @classmethod
    def matern_hardcore(cls, proposal_intensity, hardcore_radius):
        if min(proposal_intensity, hardcore_radius) <= 0:
            raise InvalidSpecError("matern hardcore parameters must be positive")
        return cls(
            "matern_hardcore",
            {
                "proposal_intensity": float(proposal_intensity),
                "hardcore_radius": float(hardcore_radius),
            },
        )

    @classmethod
    def gibbs(cls, activity, inverse_temperature, potential: PairPotential,
              sweeps: int = 200, burn_in: int = 1000, thin: int = 10,
              boundary: PointConfiguration | None = None):
        if not activity > 0:
            raise InvalidSpecError("gibbs activity must be positive")
        if inverse_temperature < 0:
            raise InvalidSpecError("inverse temperature must be nonnegative")
        if not isinstance(potential, PairPotential):
            raise RejectedSpecError("gibbs requires a PairPotential")
        return cls(
            "gibbs",
            {
                "activity": float(activity),
                "beta": float(inverse_temperature),
                "potential": potential,
                "sweeps": int(sweeps),
                "burn_in": int(burn_in),
                "thin": int(thin),
                "boundary": boundary,
            },
        )

    def intensity_hint(self) -> float:
        """Rough expected intensity, used only for window sizing heuristics."""
        p = self.params
        if self.variant == "poisson":
            return p["intensity"]
        if self.variant == "matern_cluster":
            return p["parent_intensity"] * p["mean_offspring"]
        if self.variant == "matern_hardcore":
            return p["proposal_intensity"]
        return p["activity"]


@dataclass
class RootedConfiguration:
    """A configuration together with a distinguished root point.

    Seen from the root (shift the root to the origin), this is a sample of
    the configuration around a typical point.  `provenance` records the
    sampling route; a prebuilt complex may be attached for reuse.
    """

    config: PointConfiguration
    root_index: int
    provenance: str
    complex: DelaunayComplex | None = None

    @property
    def root(self) -> np.ndarray:
        return self.config.points[self.root_index]

    def rooted_points(self) -> np.ndarray:
        """All points shifted so the root sits at the origin."""
        return self.config.points - self.root

    def count_around_root(self, region) -> int:
        """Count of points in `region` translated to be centered on the root.

        `region` is a Box or Ball stated in root coordinates (origin = root).
        """
        shifted = self.config.points - self.root
        return int(region.count(shifted))

    def ensure_complex(self) -> DelaunayComplex:
        if self.complex is None:
            self.complex = build_delaunay(self.config)
        return self.complex


def _uniform_in_box(gen, window: Box, n: int) -> np.ndarray:
    lo = window.lo
    hi = window.hi
    return gen.uniform(lo, hi, (n, window.dimension))


def _unit_ball(gen, n: int, d: int) -> np.ndarray:
    """Uniform points in the unit ball (rejection from the cube)."""
    out = np.zeros((0, d))
    while len(out) < n:
        cand = gen.uniform(-1.0, 1.0, (max(8, 2 * (n - len(out))), d))
        keep = cand[np.sum(cand * cand, axis=1) <= 1.0]
        out = np.vstack([out, keep])
    return out[:n]


def _make_config(dimension, window, pts, max_fix=3):
    """Wrap points into a configuration; exact duplicate collisions are a
    measure-zero event of float sampling, resolved by dropping copies."""
    for _ in range(max_fix):
        try:
            return PointConfiguration(dimension, window, pts)
        except InvalidConfigurationError:
            pts = np.unique(pts, axis=0)
    return PointConfiguration(dimension, window, pts)


def sample(spec: ProcessSpec, window: Box, stream: RngStream) -> PointConfiguration:
    """Draw one configuration on `window`; deterministic in (spec, window, stream)."""
    gen = stream.generator()
    d = window.dimension
    p = spec.params
    if spec.variant == "poisson":
        n = int(gen.poisson(p["intensity"] * window.volume()))
        return _make_config(d, window, _uniform_in_box(gen, window, n))
    if spec.variant == "matern_cluster":
        r_c = p["cluster_radius"]
        parent_win = window.grow(r_c)
        n_par = int(gen.poisson(p["parent_intensity"] * parent_win.volume()))
        parents = _uniform_in_box(gen, parent_win, n_par)
        counts = gen.poisson(p["mean_offspring"], n_par) if n_par else np.zeros(0, int)
        total = int(np.sum(counts))
        offs = _unit_ball(gen, total, d) * r_c
        pts = np.repeat(parents, counts, axis=0) + offs
        pts = pts[window.contains_points(pts)]
        return _make_config(d, window, pts)
    if spec.variant == "matern_hardcore":
        r_hc = p["hardcore_radius"]
        prop_win = window.grow(r_hc)
        n_prop = int(gen.poisson(p["proposal_intensity"] * prop_win.volume()))
        props = _uniform_in_box(gen, prop_win, n_prop)
        marks = gen.uniform(0.0, 1.0, n_prop)
        keep = np.ones(n_prop, dtype=bool)
        for i in range(n_prop):
            diff = props - props[i]
            close = np.sum(diff * diff, axis=1) < r_hc * r_hc
            close[i] = False
            if np.any(marks[close] < marks[i]):
                keep[i] = False
        pts = props[keep]
        pts = pts[window.contains_points(pts)]
        return _make_config(d, window, pts)
    if spec.variant == "gibbs":
        state = _gibbs_chain(spec, window, gen, n_samples=1)[0]
        return _make_config(d, window, state)
    raise UnsupportedProcessError(f"unknown process variant {spec.variant!r}")


def sample_gibbs_chain(spec: ProcessSpec, window: Box, stream: RngStream,
                       n_samples: int) -> list:
    """Thinned samples from one Metropolis-Hastings chain (burn-in included).

    Samples are separated by `thin` sweeps; they are identically distributed
    but not independent, which the moment checks tolerate.
    """
    if spec.variant != "gibbs":
        raise UnsupportedProcessError("chain sampling is a gibbs-only route")
    gen = stream.generator()
    states = _gibbs_chain(spec, window, gen, n_samples=n_samples)
    return [_make_config(window.dimension, window, s) for s in states]


def _gibbs_chain(spec, window, gen, n_samples):
    p = spec.params
    z = p["activity"]
    beta = p["beta"]
    pot: PairPotential = p["potential"]
    boundary = p["boundary"]
    bpts = boundary.points if boundary is not None else np.zeros((0, window.dimension))
    vol = window.volume()
    sweep = max(1, int(round(z * vol)))
    state = np.zeros((0, window.dimension))

    def delta_add(x, pts):
        if beta == 0.0:
            return 0.0
        e = pot.energy_against(x, pts)
        if math.isinf(e):
            return math.inf
        if len(bpts):
            eb = pot.energy_against(x, bpts)
            if math.isinf(eb):
                return math.inf
            e += eb
        return e

    def boltzmann(exponent):
        # acceptance factor e^exponent with overflow clamp
        return math.exp(min(exponent, 700.0))

    def run_sweeps(state, count):
        for _ in range(count * sweep):
            u = gen.uniform()
            n = len(state)
            if u < 1.0 / 3.0:  # birth
                x = gen.uniform(window.lo, window.hi)
                dh = delta_add(x, state)
                if math.isinf(dh):
                    continue
                if gen.uniform() < z * vol / (n + 1) * boltzmann(-beta * dh):
                    state = np.vstack([state, x])
            elif u < 2.0 / 3.0:  # death
                if n == 0:
                    continue
                i = int(gen.integers(n))
                rest = np.delete(state, i, axis=0)
                dh = delta_add(state[i], rest)
                if math.isinf(dh) or gen.uniform() < n / (z * vol) * boltzmann(beta * dh):
                    state = rest
            else:  # move
                if n == 0:
                    continue
                i = int(gen.integers(n))
                rest = np.delete(state, i, axis=0)
                x_new = gen.uniform(window.lo, window.hi)
                dh_new = delta_add(x_new, rest)
                if math.isinf(dh_new):
                    continue
                dh = dh_new - delta_add(state[i], rest)
                if dh <= 0 or gen.uniform() < boltzmann(-beta * dh):
                    state = np.vstack([rest, x_new])
        return state

    state = run_sweeps(state, p["burn_in"])
    out = []
    for k in range(n_samples):
        if k > 0:
            state = run_sweeps(state, p["thin"])
        out.append(state.copy())
    return out


def palm_root_slivnyak(spec: ProcessSpec, window: Box,
                       stream: RngStream) -> RootedConfiguration:
    """Independent sample with the origin adjoined: the exact rooted law
    for a Poisson process, used as the cross-check oracle for the
    spatial-average route."""
    if spec.variant != "poisson":
        raise UnsupportedProcessError("exact rooting is a poisson-only route")
    origin = np.zeros(window.dimension)
    if not window.contains(origin):
        raise InvalidConfigurationError("window must contain the origin")
    cfg = sample(spec, window, stream)
    pts = cfg.points
    if len(pts) and np.any(np.all(pts == origin, axis=1)):
        pts = pts[~np.all(pts == origin, axis=1)]
    pts = np.vstack([origin[None, :], pts])
    rooted_cfg = PointConfiguration(window.dimension, window, pts)
    return RootedConfiguration(rooted_cfg, 0, "slivnyak")


def extend_poisson(config: PointConfiguration, intensity: float,
                   new_half_side: float, stream: RngStream) -> PointConfiguration:
    """Consistently extend a Poisson sample onto a larger window by drawing
    the annulus independently (restriction property of the Poisson law)."""
    old = config.window
    if new_half_side <= old.half_side:
        return config
    new_window = Box(old.center, new_half_side)
    gen = stream.generator()
    vol_ann = new_window.volume() - old.volume()
    n = int(gen.poisson(intensity * vol_ann))
    ann = np.zeros((0, config.dimension))
    while len(ann) < n:
        cand = _uniform_in_box(gen, new_window, max(16, 2 * (n - len(ann))))
        keep = cand[~old.contains_points(cand)]
        ann = np.vstack([ann, keep])
    pts = np.vstack([config.points, ann[:n]])
    return _make_config(config.dimension, new_window, pts)


@dataclass
class CampbellAverage:
    """Sum of a rooted functional over contributing points of one sample."""

    total: float
    count: int
    discarded: int


def campbell_palm_average(functional, config: PointConfiguration, core: Box,
                          complex_: DelaunayComplex | None = None) -> CampbellAverage:
    """Sum functional(shifted configuration) over interior-valid points in core.

    The caller pools (total, count) over replicates and divides, which
    estimates the rooted expectation of the functional; points whose
    neighborhood the window cannot certify are skipped and counted.
    """
    if not config.window.contains_box(core):
        raise InvalidConfigurationError("core must lie inside the window")
    if complex_ is None:
        complex_ = build_delaunay(config)
    in_core = core.contains_points(config.points)
    total = 0.0
    count = 0
    discarded = 0
    for i in np.nonzero(in_core)[0]:
        if not complex_.interior_valid[i]:
            discarded += 1
            continue
        rooted = RootedConfiguration(config, int(i), "campbell_shift", complex_)
        total += float(functional(rooted))
        count += 1
    return CampbellAverage(total, count, discarded)
