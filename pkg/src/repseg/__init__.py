"""Shortest representative segment of a planar point set.

A segment is representative when every point lies within distance r of it.
The static solver sweeps all orientations while maintaining two convex
chains of circular arcs; the kinetic part keeps a stable approximation for
moving points.
"""
from .geometry import Circle, CircularArc, Line, Point2, Segment, point_segment_distance
from .hull import CaliperResult, ConvexHull, calipers, convex_hull, strip_width
from .chains import (ConvexChain, FixedOptimum, build_convex_chains, fixed_optimum,
                     fixed_orientation_tangents, shortest_segment_fixed_orientation)
from .index import DiskIndex, build_index, circular_ray_query, line_query
from .sweep import (ConsistencyChecker, SolveResult, SweepError, SweepTrace, run_sweep,
                    sweep_shortest_segment)
from .kinetic import (CanonicalSolution, Chaser, KineticOutput, StabilityReport, Trajectory,
                      canonical_solution, evaluate, verify_stability, width_extent_diameter)
from .oracle import brute_force_shortest, validate_segment

solve = sweep_shortest_segment

__all__ = [
    "Circle", "CircularArc", "Line", "Point2", "Segment", "point_segment_distance",
    "CaliperResult", "ConvexHull", "calipers", "convex_hull", "strip_width",
    "ConvexChain", "FixedOptimum", "build_convex_chains", "fixed_optimum",
    "fixed_orientation_tangents", "shortest_segment_fixed_orientation",
    "DiskIndex", "build_index", "circular_ray_query", "line_query",
    "ConsistencyChecker", "SolveResult", "SweepError", "SweepTrace", "run_sweep",
    "sweep_shortest_segment", "solve",
    "CanonicalSolution", "Chaser", "KineticOutput", "StabilityReport", "Trajectory",
    "canonical_solution", "evaluate", "verify_stability", "width_extent_diameter",
    "brute_force_shortest", "validate_segment",
]
