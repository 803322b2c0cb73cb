"""Recognition of graphs realizable as 2-intersection graphs of 3-uniform hypergraphs."""
from __future__ import annotations

from .errors import ConstructionError, GhrecError, InputError
from .graph import Graph, parse_graph, serialize_graph
from .hypergraph import Labelling, image, parse_labelling, serialize_labelling, verify_labelling
from .oracle import oracle_search
from .recognizer import recognize

__all__ = [
    "ConstructionError", "GhrecError", "InputError", "Graph", "Labelling", "image", "oracle_search",
    "parse_graph", "parse_labelling", "recognize", "serialize_graph", "serialize_labelling", "verify_labelling",
]
