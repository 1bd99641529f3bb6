"""Laman numbers of planar rigid graphs via bigraph recursion."""

__version__ = "0.1.0"

from .engine import LamanEngine, laman_number, laman_number_graph
from .graphs import Bigraph, Multigraph
from .rigidity import SimpleGraph, generate_laman, is_laman

__all__ = [
    "Bigraph",
    "LamanEngine",
    "Multigraph",
    "SimpleGraph",
    "generate_laman",
    "is_laman",
    "laman_number",
    "laman_number_graph",
]
