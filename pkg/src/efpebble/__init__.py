"""Pebble games, alternation hierarchies and two-variable logic on colored graphs."""

from .structures import ColoredGraph, make_graph

__all__ = ["ColoredGraph", "make_graph"]
__version__ = "0.1.0"
