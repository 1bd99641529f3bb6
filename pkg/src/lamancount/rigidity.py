"""Laman (generic planar rigidity) checks and Henneberg enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .canon import canonical_key
from .graphs import Bigraph, GraphInputError, Multigraph

BRUTEFORCE_MAX_VERTICES = 14
GENERATE_RANGE = (3, 9)


@dataclass(frozen=True)
class SimpleGraph:
    """Graph without self-loops or parallel edges; edges are sorted pairs."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            if u > v:
                raise GraphInputError(f"edge {e} must be written as (min, max)")
            if u not in self.vertices or v not in self.vertices:
                raise GraphInputError(f"edge {e} has an endpoint outside the vertex set")

    @classmethod
    def from_pairs(cls, pairs, vertices=None) -> "SimpleGraph":
        edges = set()
        for u, v in pairs:
            e = (min(u, v), max(u, v))
            if e in edges:
                raise GraphInputError(f"duplicate edge {e}")
            edges.add(e)
        if vertices is None:
            vertices = {w for e in edges for w in e}
        return cls(frozenset(vertices), frozenset(edges))

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_multigraph(self) -> Multigraph:
        """Edge ids follow the sorted edge order."""
        return Multigraph.from_edges(
            [(i, u, v) for i, (u, v) in enumerate(self.sorted_edges())], self.vertices
        )

    def to_bigraph(self) -> Bigraph:
        return Bigraph.from_graph(self.to_multigraph())

    def key(self) -> bytes:
        return canonical_key(self.to_bigraph())

    def relabel(self, mapping) -> "SimpleGraph":
        return SimpleGraph.from_pairs(
            [(mapping[u], mapping[v]) for u, v in self.edges], [mapping[v] for v in self.vertices]
        )


def _pebble_search(start, blocked, pebbles, out):
    """Find a free pebble reachable from ``start`` and move it there."""
    pred = {start: None}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in out[x]:
            if y in pred or y in blocked:
                continue
            pred[y] = x
            if pebbles[y] > 0:
                # reverse the path start -> ... -> y
                pebbles[y] -= 1
                pebbles[start] += 1
                while pred[y] is not None:
                    x = pred[y]
                    out[x].remove(y)
                    out[y].append(x)
                    y = x
                return True
            stack.append(y)
    return False


def is_laman(g: SimpleGraph) -> bool:
    """(2,3) pebble game: every edge must be independent and |E| = 2|V| - 3."""
    n = len(g.vertices)
    if n < 2 or len(g.edges) != 2 * n - 3:
        return False
    pebbles = {v: 2 for v in g.vertices}
    out = {v: [] for v in g.vertices}
    for u, v in g.sorted_edges():
        blocked = (u, v)
        while pebbles[u] + pebbles[v] < 4:
            if not (_pebble_search(u, blocked, pebbles, out) or _pebble_search(v, blocked, pebbles, out)):
                return False
        # cover the new edge with a pebble from u
        pebbles[u] -= 1
        out[u].append(v)
    return True


def is_laman_bruteforce(g: SimpleGraph) -> bool:
    """Check the Laman counts on every vertex subset of size >= 2."""
    verts = sorted(g.vertices)
    n = len(verts)
    if n > BRUTEFORCE_MAX_VERTICES:
        raise ValueError(f"brute-force check limited to {BRUTEFORCE_MAX_VERTICES} vertices, got {n}")
    if n < 2 or len(g.edges) != 2 * n - 3:
        return False
    bit = {v: 1 << i for i, v in enumerate(verts)}
    masks = [bit[u] | bit[v] for u, v in g.edges]
    for sub in range(1, 1 << n):
        size = bin(sub).count("1")
        if size < 2:
            continue
        induced = sum(1 for m in masks if m & sub == m)
        if induced > 2 * size - 3:
            return False
    return True


def henneberg_one(g: SimpleGraph, u, v) -> SimpleGraph:
    """Add a new vertex joined to ``u`` and ``v``."""
    w = max(g.vertices) + 1
    return SimpleGraph(g.vertices | {w}, g.edges | {(u, w), (v, w)})


def henneberg_two(g: SimpleGraph, edge, w) -> SimpleGraph:
    """Subdivide ``edge`` by a new vertex that is also joined to ``w``."""
    u, v = edge
    x = max(g.vertices) + 1
    new = {(min(a, x), max(a, x)) for a in (u, v, w)}
    return SimpleGraph(g.vertices | {x}, (g.edges - {edge}) | new)


def _extensions(g: SimpleGraph):
    verts = sorted(g.vertices)
    for u, v in combinations(verts, 2):
        yield henneberg_one(g, u, v)
    for e in g.sorted_edges():
        for w in verts:
            if w not in e:
                yield henneberg_two(g, e, w)


@lru_cache(maxsize=None)
def _generate(n: int) -> tuple:
    if n == 2:
        return (SimpleGraph.from_pairs([(0, 1)]),)
    found = {}
    for parent in _generate(n - 1):
        for child in _extensions(parent):
            key = child.key()
            if key not in found:
                found[key] = child
    for child in found.values():
        if not is_laman(child):
            raise AssertionError("Henneberg move produced a non-Laman graph")
    return tuple(found[k] for k in sorted(found))


def generate_laman(n: int) -> list:
    """All Laman graphs on ``n`` vertices up to isomorphism, sorted by key."""
    lo, hi = GENERATE_RANGE
    if not lo <= n <= hi:
        raise ValueError(f"generate_laman supports {lo} <= n <= {hi}, got {n}")
    return list(_generate(n))
