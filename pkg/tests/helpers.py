"""Shared test utilities: brute-force oracles and small graph builders."""

import random
from itertools import combinations, permutations
from pathlib import Path

from lamancount.graphs import Bigraph, Multigraph
from lamancount.rigidity import SimpleGraph, henneberg_one, henneberg_two

DATA = Path(__file__).parent / "data"

TRIANGLE = SimpleGraph.from_pairs([(0, 1), (1, 2), (0, 2)])
K4_MINUS_EDGE = SimpleGraph.from_pairs([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
K4 = SimpleGraph.from_pairs(list(combinations(range(4), 2)))
PRISM = SimpleGraph.from_pairs(
    [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
)


def multigraph(*pairs, vertices=None):
    """Edges get ids 0, 1, 2, ... in argument order."""
    return Multigraph.from_edges([(i, u, v) for i, (u, v) in enumerate(pairs)], vertices)


def bigraph(left_pairs, right_pairs):
    return Bigraph(multigraph(*left_pairs), multigraph(*right_pairs))


def brute_isomorphic(a: Bigraph, b: Bigraph) -> bool:
    """Exhaustive search over left/right vertex bijections."""
    if len(a) != len(b):
        return False
    if len(a.left.vertices) != len(b.left.vertices) or len(a.right.vertices) != len(b.right.vertices):
        return False
    ar = {eid: (u, v) for eid, u, v in a.right.edges}
    br = {eid: (u, v) for eid, u, v in b.right.edges}
    target = sorted(
        (u, v) + br[eid] for eid, u, v in b.left.edges
    )
    la, lb = sorted(a.left.vertices), sorted(b.left.vertices)
    ra, rb = sorted(a.right.vertices), sorted(b.right.vertices)
    for lp in permutations(lb):
        lmap = dict(zip(la, lp))
        for rp in permutations(rb):
            rmap = dict(zip(ra, rp))
            image = []
            for eid, u, v in a.left.edges:
                x, y = sorted((lmap[u], lmap[v]))
                s, t = sorted((rmap[ar[eid][0]], rmap[ar[eid][1]]))
                image.append((x, y, s, t))
            if sorted(image) == target:
                return True
    return False


def relabel_bigraph(b: Bigraph, rng: random.Random) -> Bigraph:
    """Random permutation of left ids, right ids and edge ids."""
    def perm(items):
        items = sorted(items)
        shuffled = items[:]
        rng.shuffle(shuffled)
        return dict(zip(items, shuffled))

    lmap, rmap, emap = perm(b.left.vertices), perm(b.right.vertices), perm(b.biedges)
    left = Multigraph.from_edges([(emap[e], lmap[u], lmap[v]) for e, u, v in b.left.edges],
                                 [lmap[v] for v in b.left.vertices])
    right = Multigraph.from_edges([(emap[e], rmap[u], rmap[v]) for e, u, v in b.right.edges],
                                  [rmap[v] for v in b.right.vertices])
    return Bigraph(left, right)


def random_laman(n: int, seed: int, p_two: float = 0.7) -> SimpleGraph:
    """Random Henneberg sequence starting from a triangle."""
    rng = random.Random(seed)
    g = TRIANGLE
    while len(g.vertices) < n:
        if rng.random() < p_two:
            e = rng.choice(g.sorted_edges())
            w = rng.choice([v for v in sorted(g.vertices) if v not in e])
            g = henneberg_two(g, e, w)
        else:
            u, v = rng.sample(sorted(g.vertices), 2)
            g = henneberg_one(g, u, v)
    return g


def random_simple_graph(rng: random.Random, max_vertices: int = 10) -> SimpleGraph:
    n = rng.randint(2, max_vertices)
    pairs = list(combinations(range(n), 2))
    # bias toward the Laman edge count so both verdicts show up
    m = min(len(pairs), max(1, 2 * n - 3 + rng.choice([-1, 0, 0, 0, 1])))
    return SimpleGraph.from_pairs(rng.sample(pairs, m), range(n))


def glue_on_edge(g: SimpleGraph, h: SimpleGraph, g_edge, h_edge) -> SimpleGraph:
    """Disjoint union of ``g`` and ``h`` with ``h_edge`` identified with ``g_edge``."""
    offset = max(g.vertices) + 1
    mapping = {v: v + offset for v in h.vertices}
    mapping[h_edge[0]], mapping[h_edge[1]] = g_edge
    pairs = set(g.edges)
    for u, v in h.edges:
        a, b = mapping[u], mapping[v]
        pairs.add((min(a, b), max(a, b)))
    return SimpleGraph.from_pairs(sorted(pairs))
