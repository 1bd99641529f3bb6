"""Plain-text edge lists: one ``u v`` pair per line, ``#`` comments."""

from __future__ import annotations

from .graphs import GraphInputError
from .rigidity import SimpleGraph


class EdgeListError(GraphInputError):
    def __init__(self, lineno: int | None, message: str):
        super().__init__(message if lineno is None else f"line {lineno}: {message}")
        self.lineno = lineno


def parse_edge_list(text: str) -> SimpleGraph:
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(lineno, f"expected two vertex ids, got {line!r}")
        try:
            u, v = (int(p) for p in parts)
        except ValueError:
            raise EdgeListError(lineno, f"vertex ids must be integers: {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListError(lineno, "vertex ids must be nonnegative")
        if u == v:
            raise EdgeListError(lineno, f"self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise EdgeListError(lineno, f"duplicate edge {e[0]} {e[1]} (first on line {edges[e]})")
        edges[e] = lineno
    if not edges:
        raise EdgeListError(None, "edge list is empty")
    return SimpleGraph.from_pairs(edges)


def format_edge_list(g: SimpleGraph, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"
