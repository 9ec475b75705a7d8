"""Packing (1,1,2,2,3)-colorings of subcubic graphs with certifying verification."""

from . import exact
from .generators import cubic_complete, petersen, random_cubic, random_subcubic
from .graph import Graph, SubdividedGraph, distance_leq, neighborhood, subdivide
from .packing import PackingSequence, SColoring, ViolationReport, lift, verify, weakening_implies
from .partition import EngineDiagnostic, PartitionState
from .pipeline import solve

__all__ = [
    "EngineDiagnostic",
    "Graph",
    "PackingSequence",
    "PartitionState",
    "SColoring",
    "SubdividedGraph",
    "ViolationReport",
    "cubic_complete",
    "distance_leq",
    "exact",
    "lift",
    "neighborhood",
    "petersen",
    "random_cubic",
    "random_subcubic",
    "solve",
    "subdivide",
    "verify",
    "weakening_implies",
]

__version__ = "0.1.0"
