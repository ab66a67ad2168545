"""Induced oriented-star densities: exact counting, optimization, search."""

from .digraph import OrientedGraph, StarRole, StarSpec, build_graph, parse_graph
from .errors import OristarError

__version__ = "0.1.0"

__all__ = [
    "OrientedGraph",
    "StarRole",
    "StarSpec",
    "build_graph",
    "parse_graph",
    "OristarError",
    "__version__",
]
