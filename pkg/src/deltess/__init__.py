"""Delaunay tessellations over sampled point processes.

Builds exact 2-D Voronoi/Delaunay geometry over seeded point-process
samples, estimates rooted (typical-point) moment quantities by Monte Carlo,
and runs Bernoulli bond percolation with a lattice coarse-graining to probe
subcriticality of thinned conductance graphs.
"""

from .errors import DeltessError
from .geometry import Ball, Box, PointConfiguration, build_delaunay
from .rng import RngStream

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Box",
    "DeltessError",
    "PointConfiguration",
    "RngStream",
    "build_delaunay",
    "__version__",
]
