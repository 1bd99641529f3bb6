"""Multigraphs, bigraphs and the minor operations used by the recursion.

Vertices and edge ids are small non-negative integers.  Every value here is
immutable; the operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class GraphInputError(ValueError):
    """Raised on malformed graphs or unknown edge ids."""


def _find(parent: dict, x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def vertex_classes(vertices: Iterable[int], pairs: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Map each vertex to the smallest vertex of its connected component."""
    parent = {v: v for v in vertices}
    for u, v in pairs:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            # smallest member stays the root
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return {v: _find(parent, v) for v in parent}


@dataclass(frozen=True)
class Multigraph:
    """Undirected graph with parallel edges and self-loops.

    ``edges`` holds ``(eid, u, v)`` triples sorted by eid with ``u <= v``.
    """

    vertices: frozenset
    edges: tuple

    def __post_init__(self):
        seen = set()
        for eid, u, v in self.edges:
            if eid in seen:
                raise GraphInputError(f"duplicate edge id {eid}")
            seen.add(eid)
            if u not in self.vertices or v not in self.vertices:
                raise GraphInputError(f"edge {eid} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges, vertices=None) -> "Multigraph":
        """Build from ``(eid, u, v)`` triples; vertices default to the endpoints."""
        norm = tuple(sorted((eid, min(u, v), max(u, v)) for eid, u, v in edges))
        if vertices is None:
            vertices = {w for _, u, v in norm for w in (u, v)}
        return cls(frozenset(vertices), norm)

    @classmethod
    def _trusted(cls, vertices: frozenset, edges: tuple) -> "Multigraph":
        # skips validation; callers guarantee the invariants
        g = object.__new__(cls)
        object.__setattr__(g, "vertices", vertices)
        object.__setattr__(g, "edges", edges)
        return g

    @property
    def edge_ids(self) -> frozenset:
        return frozenset(e[0] for e in self.edges)

    def has_self_loop(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    def is_single_edge(self) -> bool:
        """True iff the graph is one edge between two distinct vertices."""
        return len(self.edges) == 1 and self.edges[0][1] != self.edges[0][2]

    def subgraph(self, es) -> "Multigraph":
        """Spanning subgraph keeping only the edges in ``es``."""
        return Multigraph._trusted(self.vertices, tuple(e for e in self.edges if e[0] in es))

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)


def _check_ids(g: Multigraph, es) -> None:
    unknown = set(es) - g.edge_ids
    if unknown:
        raise GraphInputError(f"unknown edge ids {sorted(unknown)}")


def dim(g: Multigraph) -> int:
    """Number of vertices minus number of connected components."""
    classes = vertex_classes(g.vertices, ((u, v) for _, u, v in g.edges))
    return len(classes) - len(set(classes.values()))


def quotient(g: Multigraph, es) -> Multigraph:
    """Contract the edges in ``es``; classes are named by their smallest vertex.

    Remaining edges whose endpoints merge become self-loops; parallel edges
    stay distinct.
    """
    es = frozenset(es)
    _check_ids(g, es)
    cls = vertex_classes(g.vertices, ((u, v) for eid, u, v in g.edges if eid in es))
    edges = []
    for eid, u, v in g.edges:
        if eid in es:
            continue
        a, b = cls[u], cls[v]
        edges.append((eid, a, b) if a <= b else (eid, b, a))
    return Multigraph._trusted(frozenset(cls.values()), tuple(edges))


def complement(g: Multigraph, es) -> Multigraph:
    """Delete the edges in ``es`` and every vertex left without an edge."""
    es = frozenset(es)
    _check_ids(g, es)
    edges = tuple(e for e in g.edges if e[0] not in es)
    return Multigraph._trusted(frozenset(w for _, u, v in edges for w in (u, v)), edges)


@dataclass(frozen=True)
class Bigraph:
    """Two multigraphs over one shared set of edge ids (biedges).

    The vertex sets of ``left`` and ``right`` are separate namespaces.
    """

    left: Multigraph
    right: Multigraph

    def __post_init__(self):
        if self.left.edge_ids != self.right.edge_ids:
            raise GraphInputError("left and right graphs must carry the same edge ids")

    @classmethod
    def _trusted(cls, left: Multigraph, right: Multigraph) -> "Bigraph":
        b = object.__new__(cls)
        object.__setattr__(b, "left", left)
        object.__setattr__(b, "right", right)
        return b

    @classmethod
    def from_graph(cls, g: Multigraph) -> "Bigraph":
        """The bigraph (G, G): two copies of ``g`` matched edge by edge."""
        return cls(g, g)

    @property
    def biedges(self) -> frozenset:
        return self.left.edge_ids

    def __len__(self) -> int:
        return len(self.left.edges)

    def swap(self) -> "Bigraph":
        return Bigraph._trusted(self.right, self.left)


def left_quot(b: Bigraph, m) -> Bigraph:
    """(G / M, H \\ M)."""
    return Bigraph._trusted(quotient(b.left, m), complement(b.right, m))


def right_quot(b: Bigraph, m) -> Bigraph:
    """(G \\ M, H / M)."""
    return Bigraph._trusted(complement(b.left, m), quotient(b.right, m))


def is_pseudo_laman(b: Bigraph) -> bool:
    return dim(b.left) + dim(b.right) == len(b) + 1


def _drop_isolated(g: Multigraph) -> Multigraph:
    used = frozenset(w for _, u, v in g.edges for w in (u, v))
    if used == g.vertices:
        return g
    return Multigraph._trusted(used, g.edges)


def normalize(b: Bigraph) -> Bigraph:
    """Remove vertices without incident edges from both sides."""
    left, right = _drop_isolated(b.left), _drop_isolated(b.right)
    if left is b.left and right is b.right:
        return b
    return Bigraph._trusted(left, right)
