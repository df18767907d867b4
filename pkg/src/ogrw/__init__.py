"""Typed open-graphs and double-pushout rewriting of string diagrams."""
from .core import (
    Edge,
    GraphBuilder,
    GraphMorphism,
    OpenGraph,
    Point,
    Signature,
    TypeGraph,
    build_typegraph,
    check_morphism,
    find_embeddings,
    find_isomorphism,
    format_graph,
    is_mono,
    validate_graph,
)
from .errors import OgrwError

__all__ = [
    "Edge",
    "GraphBuilder",
    "GraphMorphism",
    "OgrwError",
    "OpenGraph",
    "Point",
    "Signature",
    "TypeGraph",
    "build_typegraph",
    "check_morphism",
    "find_embeddings",
    "find_isomorphism",
    "format_graph",
    "is_mono",
    "validate_graph",
]
