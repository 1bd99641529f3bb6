"""Canonical keys for bigraphs.

The bigraph is encoded as one vertex-colored incidence structure: left
vertices, right vertices and biedges form three color classes, and every
biedge node is joined to its two left and two right endpoints (a self-loop
contributes a double link).  Color refinement plus individualization with
backtracking yields a canonical labeling of the vertex nodes; the key is the
relabeled edge multiset.
"""

from __future__ import annotations

from array import array

from .graphs import Bigraph

CanonicalKey = bytes


def _refine(colors: list, adj: list) -> list:
    """Refine ``colors`` to the coarsest equitable partition.

    Colors are ranks of (old color, sorted neighbour colors), so the result
    depends only on the colored structure, never on node numbering.
    """
    n_colors = len(set(colors))
    while True:
        sigs = [(colors[i], tuple(sorted([colors[j] for j in adj[i]]))) for i in range(len(adj))]
        rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == n_colors:
            return new
        colors, n_colors = new, len(rank)


class _Search:
    def __init__(self, adj, n_vertex_nodes, n_left, edges):
        self.adj = adj
        self.nv = n_vertex_nodes
        self.n_left = n_left
        self.edges = edges  # (lu, lv, ru, rv) node indices
        self.best = None
        self.best_colors = None
        self.first_colors = None
        self.first_cert = None
        self.automorphisms = []

    def certificate(self, colors):
        nl = self.n_left
        rows = []
        for lu, lv, ru, rv in self.edges:
            a, b = colors[lu], colors[lv]
            c, d = colors[ru] - nl, colors[rv] - nl
            rows.append((a, b, c, d) if a <= b else (b, a, c, d))
            if rows[-1][2] > rows[-1][3]:
                r = rows[-1]
                rows[-1] = (r[0], r[1], r[3], r[2])
        rows.sort()
        return tuple(rows)

    def _automorphism(self, c1, c2):
        by_color = {c2[x]: x for x in range(self.nv)}
        return [by_color[c1[x]] for x in range(self.nv)]

    def leaf(self, colors):
        cert = self.certificate(colors)
        if self.first_cert is None:
            self.first_cert, self.first_colors = cert, colors
        elif cert == self.first_cert:
            self.automorphisms.append(self._automorphism(self.first_colors, colors))
        if self.best is None or cert < self.best:
            self.best, self.best_colors = cert, colors
        elif cert == self.best and self.best_colors is not self.first_colors:
            self.automorphisms.append(self._automorphism(self.best_colors, colors))

    def _same_orbit(self, prefix, explored, w):
        gens = [g for g in self.automorphisms if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        orbit, frontier = {w}, [w]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return not orbit.isdisjoint(explored)

    def run(self, colors, prefix):
        colors = _refine(colors, self.adj)
        cells = {}
        for x in range(self.nv):
            cells.setdefault(colors[x], []).append(x)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            self.leaf(colors)
            return
        explored = set()
        for w in cells[target]:
            if explored and self._same_orbit(prefix, explored, w):
                continue
            explored.add(w)
            nxt = [2 * c for c in colors]
            nxt[w] = 2 * target - 1
            self.run(nxt, prefix + (w,))


def canonical_form(b: Bigraph) -> tuple:
    """Isomorphism-complete certificate ``(n_left, n_right, rows)``."""
    lverts = sorted(b.left.vertices)
    rverts = sorted(b.right.vertices)
    n_left, n_right = len(lverts), len(rverts)
    lidx = {v: i for i, v in enumerate(lverts)}
    ridx = {v: n_left + i for i, v in enumerate(rverts)}
    nv = n_left + n_right
    right_edges = {eid: (u, v) for eid, u, v in b.right.edges}
    adj = [[] for _ in range(nv + len(b))]
    edges = []
    for k, (eid, u, v) in enumerate(b.left.edges):
        node = nv + k
        ru, rv = right_edges[eid]
        ends = (lidx[u], lidx[v], ridx[ru], ridx[rv])
        edges.append(ends)
        for x in ends:
            adj[node].append(x)
            adj[x].append(node)
    colors = [0] * n_left + [1] * n_right + [2] * len(b)
    search = _Search(adj, nv, n_left, edges)
    search.run(colors, ())
    return n_left, n_right, search.best


def canonical_key(b: Bigraph) -> CanonicalKey:
    """Byte string equal for two bigraphs iff they are isomorphic.

    ``b`` should be normalized; isolated vertices are counted as part of the
    structure.
    """
    n_left, n_right, rows = canonical_form(b)
    flat = array("H", [n_left, n_right, len(rows)])
    for row in rows:
        flat.extend(row)
    return flat.tobytes()
