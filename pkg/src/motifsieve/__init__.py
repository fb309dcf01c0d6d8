"""Colored temporal path search by constrained multilinear sieving over GF(2^b)."""

from .graph import (
    GraphFormatError,
    StaticProjection,
    TemporalGraph,
    TemporalPath,
    VertexColoring,
    from_edges,
    load_graph,
    project_static,
    restrict_to,
    validate_path,
)
from .query import MotifQuery
from .sieve import SieveConfig, SieveOutcome, ShadeAssignment, build_shades
from .solvers import SolveReport, Verdict, decide, solve

__all__ = [
    "GraphFormatError",
    "MotifQuery",
    "ShadeAssignment",
    "SieveConfig",
    "SieveOutcome",
    "SolveReport",
    "StaticProjection",
    "TemporalGraph",
    "TemporalPath",
    "Verdict",
    "VertexColoring",
    "build_shades",
    "decide",
    "from_edges",
    "load_graph",
    "project_static",
    "restrict_to",
    "solve",
    "validate_path",
]
