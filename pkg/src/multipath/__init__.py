"""Shortest p edge-disjoint paths from one source to every vertex, and
optimal-size single-source p-multipath preservers."""

__version__ = "0.1.0"

from .engine import EngineResult, run
from .errors import (
    InternalInvariant,
    MultipathError,
    NegativeReducedCost,
    NotOutconnected,
    UnreachableVertex,
)
from .graph import TOP, Digraph, LexCost, OrientedEdge, generate_outconnected, parse_graph, write_graph
from .oracle import brute_force_disjoint, max_disjoint_paths, ssp_fast, ssp_reference
from .transforms import solve_general, solve_vertex_disjoint

__all__ = [
    "Digraph", "LexCost", "OrientedEdge", "TOP", "EngineResult", "run",
    "generate_outconnected", "parse_graph", "write_graph",
    "ssp_fast", "ssp_reference", "brute_force_disjoint", "max_disjoint_paths",
    "solve_general", "solve_vertex_disjoint",
    "MultipathError", "NotOutconnected", "UnreachableVertex",
    "NegativeReducedCost", "InternalInvariant",
]
