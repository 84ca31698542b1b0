from .primitives import Ball, Box, PointConfiguration, ThickenedSet, read_points_file, write_points_file
from .delaunay import (
    DelaunayComplex,
    FundamentalRegion,
    VoronoiCell,
    build_delaunay,
    clip_cell_to_box,
    cube_in_ball_witness,
    fundamental_region,
    lattice_shell,
    orthant_criterion,
)
from .oracle import empty_disk_witness, oracle_adjacency, oracle_cell

__all__ = [
    "Ball",
    "Box",
    "DelaunayComplex",
    "FundamentalRegion",
    "PointConfiguration",
    "ThickenedSet",
    "VoronoiCell",
    "build_delaunay",
    "clip_cell_to_box",
    "cube_in_ball_witness",
    "empty_disk_witness",
    "fundamental_region",
    "lattice_shell",
    "oracle_adjacency",
    "oracle_cell",
    "orthant_criterion",
    "read_points_file",
    "write_points_file",
]
