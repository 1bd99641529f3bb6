"""Laman numbers of bigraphs by contraction/deletion recursion.

For a pseudo-Laman bigraph ``B = (G, H)`` and a pivot biedge ``p``::

    Lam(B) = 0                      if G or H has a self-loop
    Lam(B) = 1                      if G and H are both one proper edge
    Lam(B) = Lam(^{p}B) + Lam(B^{p}) + sum Lam(^M B) * Lam(B^N)

where ``^M B = (G/M, H\\M)``, ``B^N = (G\\N, H/N)`` and the sum runs over
the splits ``(M, N)`` of the biedges around ``p`` (see ``enumerate_splits``).
A unary term that is not pseudo-Laman contributes 0.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

from .canon import canonical_key
from .graphs import (
    Bigraph,
    GraphInputError,
    Multigraph,
    dim,
    is_pseudo_laman,
    left_quot,
    normalize,
    right_quot,
)
from .rigidity import SimpleGraph, is_laman

log = logging.getLogger(__name__)

UINT64_MAX = (1 << 64) - 1
PIVOT_STRATEGIES = ("default", "first")


class LamanOverflowError(ArithmeticError):
    """A count left the unsigned 64-bit range."""


class NotPseudoLamanError(GraphInputError):
    pass


class NotLamanError(GraphInputError):
    pass


def checked_add(a: int, b: int) -> int:
    s = a + b
    if s > UINT64_MAX:
        raise LamanOverflowError(f"{a} + {b} exceeds 64 bits")
    return s


def checked_mul(a: int, b: int) -> int:
    p = a * b
    if p > UINT64_MAX:
        raise LamanOverflowError(f"{a} * {b} exceeds 64 bits")
    return p


@dataclass(frozen=True)
class Split:
    m: frozenset
    n: frozenset
    pivot: int

    def __post_init__(self):
        if self.m & self.n != {self.pivot}:
            raise ValueError("m and n must meet exactly in the pivot")
        if len(self.m) < 2 or len(self.n) < 2:
            raise ValueError("m and n need at least two biedges each")


@dataclass
class RecursionStats:
    nodes: int = 0
    cache_hits: int = 0
    splits_enumerated: int = 0
    splits_surviving: int = 0
    unary_skipped: int = 0
    wall_time: float = 0.0

    def merge(self, other: "RecursionStats") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class MemoCache:
    """Canonical key -> Laman number, with a cheap exact-shape front table.

    Sub-bigraphs reached along different recursion paths are often literally
    equal (same edge ids, same class representatives), so the exact table
    saves most canonical-key computations.
    """

    values: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0

    def lookup(self, shape):
        """Return ``(value, key)``; value is None on a miss."""
        value = self.exact.get(shape)
        if value is not None:
            self.hits += 1
            return value, None
        key = shape_key(shape)
        value = self.values.get(key)
        if value is None:
            self.misses += 1
            return None, key
        self.hits += 1
        self.exact[shape] = value
        return value, key

    def store(self, shape, key, value: int) -> None:
        if key is None:
            key = shape_key(shape)
        old = self.values.get(key)
        if old is not None and old != value:
            raise AssertionError(f"cache key rebound from {old} to {value}")
        self.values[key] = value
        self.exact[shape] = value

    def clear(self) -> None:
        self.values.clear()
        self.exact.clear()
        self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self.values)


def _shape(b: Bigraph) -> tuple:
    return b.left.edges, b.right.edges


def shape_key(shape) -> bytes:
    left, right = shape
    return canonical_key(
        Bigraph._trusted(
            Multigraph._trusted(frozenset(w for e in left for w in e[1:]), left),
            Multigraph._trusted(frozenset(w for e in right for w in e[1:]), right),
        )
    )


def choose_pivot(b: Bigraph, strategy: str = "default") -> int:
    """Deterministic pivot biedge.

    ``default`` picks the smallest edge id at a maximum-degree left vertex;
    ``first`` picks the smallest edge id.
    """
    if not len(b):
        raise GraphInputError("bigraph has no biedges")
    if strategy == "first":
        return b.left.edges[0][0]
    if strategy != "default":
        raise ValueError(f"unknown pivot strategy {strategy!r}")
    deg = {}
    for _, u, v in b.left.edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    top = max(deg.values())
    best = min(v for v, d in deg.items() if d == top)
    return min(eid for eid, u, v in b.left.edges if best in (u, v))


class _RollbackUF:
    __slots__ = ("parent", "size", "history", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history = []
        self.rank = 0  # number of successful unions = dim of the edge set

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(-1)
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.rank += 1
        self.history.append(rb)

    def undo(self) -> None:
        rb = self.history.pop()
        if rb < 0:
            return
        ra = self.parent[rb]
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]
        self.rank -= 1


def _split_masks(b: Bigraph, pivot: int, skip_zero: bool) -> tuple:
    """Depth-first walk over membership bitmasks with incremental pruning.

    Bit ``i`` of a mask says that the i-th non-pivot biedge lies in M.
    Writing ``a = |N| - dim H[N-p]`` (never decreases as N grows) and
    ``c = dim G - dim G[M]`` (never increases as M grows), the left quotient
    is pseudo-Laman iff ``a == c``; so a prefix with ``c < a`` is dead.  The
    right quotient is handled symmetrically.

    With ``skip_zero`` a prefix is also dropped once a quotient is bound to
    carry a self-loop, i.e. an N-edge closes a cycle of G[M] or an M-edge
    closes a cycle of H[N]; such splits contribute 0.
    """
    lverts = {v: i for i, v in enumerate(sorted(b.left.vertices))}
    rverts = {v: i for i, v in enumerate(sorted(b.right.vertices))}
    right = {eid: (u, v) for eid, u, v in b.right.edges}
    others = []
    pl = pr = None
    for eid, u, v in b.left.edges:
        ru, rv = right[eid]
        item = (eid, lverts[u], lverts[v], rverts[ru], rverts[rv])
        if eid == pivot:
            pl, pr = item[1:3], item[3:5]
        else:
            others.append(item)
    if pl is None:
        raise GraphInputError(f"pivot {pivot} is not a biedge")
    k = len(others)
    dim_g, dim_h = dim(b.left), dim(b.right)
    gm, gme = _RollbackUF(len(lverts)), _RollbackUF(len(lverts))
    hn, hne = _RollbackUF(len(rverts)), _RollbackUF(len(rverts))
    gm.union(*pl)
    hn.union(*pr)
    found = []
    counter = [0]

    # the most significant bit is decided first so masks come out ascending
    def walk(i: int, mask: int, size_m: int, size_n: int) -> None:
        if i < 0:
            counter[0] += 1
            if (
                size_m >= 2
                and size_n >= 2
                and dim_g - gm.rank + hne.rank == size_n
                and gme.rank + dim_h - hn.rank == size_m
            ):
                found.append(mask)
            return
        _, lu, lv, ru, rv = others[i]
        # edge i into N
        if not (skip_zero and gm.find(lu) == gm.find(lv)):
            hn.union(ru, rv)
            hne.union(ru, rv)
            if dim_g - gm.rank >= size_n + 1 - hne.rank and dim_h - hn.rank >= size_m - gme.rank:
                walk(i - 1, mask, size_m, size_n + 1)
            hne.undo()
            hn.undo()
        # edge i into M
        if not (skip_zero and hn.find(ru) == hn.find(rv)):
            gm.union(lu, lv)
            gme.union(lu, lv)
            if dim_g - gm.rank >= size_n - hne.rank and dim_h - hn.rank >= size_m + 1 - gme.rank:
                walk(i - 1, mask | (1 << i), size_m + 1, size_n)
            gme.undo()
            gm.undo()

    walk(k - 1, 0, 1, 1)
    ids = [item[0] for item in others]
    return ids, found, counter[0]


def enumerate_splits(b: Bigraph, pivot: int, skip_zero: bool = False) -> list:
    """All splits ``(M, N)`` around ``pivot``, ascending by membership mask.

    Each non-pivot biedge goes to exactly one of M, N; both have at least two
    biedges, and ``^M B`` and ``B^N`` are pseudo-Laman.
    """
    ids, masks, _ = _split_masks(b, pivot, skip_zero)
    out = []
    for mask in masks:
        m = {pivot}
        n = {pivot}
        for i, eid in enumerate(ids):
            (m if mask >> i & 1 else n).add(eid)
        out.append(Split(frozenset(m), frozenset(n), pivot))
    return out


def _parallel_in_both(b: Bigraph) -> bool:
    seen = set()
    right = {eid: (u, v) for eid, u, v in b.right.edges}
    for eid, u, v in b.left.edges:
        sig = (u, v) + right[eid]
        if sig in seen:
            return True
        seen.add(sig)
    return False


class LamanEngine:
    """Memoized evaluator; one instance may serve many queries.

    ``pivot_strategy`` is applied at every recursion level.  ``shortcut``
    returns 0 as soon as two biedges have the same endpoints on both sides.
    ``trace`` collects every pseudo-Laman sub-bigraph that gets expanded.
    """

    def __init__(self, cache: MemoCache | None = None, pivot_strategy: str = "default",
                 shortcut: bool = True, prune_zero: bool = True, trace: list | None = None):
        if pivot_strategy not in PIVOT_STRATEGIES:
            raise ValueError(f"unknown pivot strategy {pivot_strategy!r}")
        self.cache = cache if cache is not None else MemoCache()
        self.pivot_strategy = pivot_strategy
        self.shortcut = shortcut
        self.prune_zero = prune_zero
        self.trace = trace
        self.stats = RecursionStats()

    def laman_number(self, b: Bigraph, pivot: int | None = None) -> int:
        """Laman number of a pseudo-Laman bigraph.

        An explicit ``pivot`` is used at the top level and bypasses the cache
        lookup there, so each pivot really recomputes the expansion.
        """
        b = normalize(b)
        if not is_pseudo_laman(b):
            raise NotPseudoLamanError(
                f"bigraph is not pseudo-Laman: dim {dim(b.left)} + {dim(b.right)} != {len(b)} + 1"
            )
        start = time.perf_counter()
        try:
            if pivot is None:
                return self._lam(b)
            if pivot not in b.biedges:
                raise GraphInputError(f"pivot {pivot} is not a biedge")
            self.stats.nodes += 1
            base = self._base_case(b)
            return base if base is not None else self._expand(b, pivot)
        finally:
            self.stats.wall_time += time.perf_counter() - start

    def _base_case(self, b: Bigraph):
        if b.left.has_self_loop() or b.right.has_self_loop():
            return 0
        if b.left.is_single_edge() and b.right.is_single_edge():
            return 1
        if self.shortcut and _parallel_in_both(b):
            return 0
        return None

    def _lam(self, b: Bigraph) -> int:
        self.stats.nodes += 1
        base = self._base_case(b)
        if base is not None:
            return base
        shape = _shape(b)
        value, key = self.cache.lookup(shape)
        if value is not None:
            self.stats.cache_hits += 1
            return value
        value = self._expand(b, choose_pivot(b, self.pivot_strategy))
        self.cache.store(shape, key, value)
        return value

    def _unary(self, b: Bigraph) -> int:
        b = normalize(b)
        if not is_pseudo_laman(b):
            self.stats.unary_skipped += 1
            log.debug("unary term not pseudo-Laman, counted as 0: %s", b)
            return 0
        return self._lam(b)

    def _expand(self, b: Bigraph, pivot: int) -> int:
        if self.trace is not None:
            self.trace.append(b)
        total = checked_add(self._unary(left_quot(b, {pivot})), self._unary(right_quot(b, {pivot})))
        ids, masks, examined = _split_masks(b, pivot, self.prune_zero)
        self.stats.splits_enumerated += examined
        self.stats.splits_surviving += len(masks)
        everything = b.biedges
        for mask in masks:
            m = {pivot}
            for i, eid in enumerate(ids):
                if mask >> i & 1:
                    m.add(eid)
            n = (everything - m) | {pivot}
            left = self._lam(normalize(left_quot(b, m)))
            if not left:
                continue
            right = self._lam(normalize(right_quot(b, n)))
            if right:
                total = checked_add(total, checked_mul(left, right))
        return total


def laman_number(b: Bigraph, cache: MemoCache | None = None, **options) -> int:
    return LamanEngine(cache, **options).laman_number(b)


def laman_number_graph(g: SimpleGraph, engine: LamanEngine | None = None) -> int:
    """Number of complex realizations of a Laman graph: Lam((G, G))."""
    if not is_laman(g):
        raise NotLamanError("graph is not Laman")
    engine = engine or LamanEngine()
    return engine.laman_number(g.to_bigraph())


def all_pivot_values(b: Bigraph, engine: LamanEngine | None = None) -> dict:
    """Laman number computed once per possible top-level pivot."""
    engine = engine or LamanEngine()
    return {p: engine.laman_number(b, pivot=p) for p in sorted(b.biedges)}


def _worker_term(args):
    b, pivot_strategy = args
    engine = LamanEngine(pivot_strategy=pivot_strategy)
    return engine.laman_number(b), engine.stats


def laman_number_parallel(b: Bigraph, jobs: int, pivot_strategy: str = "default"):
    """Evaluate the top-level terms in ``jobs`` worker processes.

    Returns ``(value, stats)``.  The value never depends on ``jobs``; the
    stats do, since every worker has its own cache.
    """
    b = normalize(b)
    if not is_pseudo_laman(b):
        raise NotPseudoLamanError("bigraph is not pseudo-Laman")
    engine = LamanEngine(pivot_strategy=pivot_strategy)
    base = engine._base_case(b)
    if base is not None or jobs <= 1:
        value = base if base is not None else engine.laman_number(b)
        return value, engine.stats
    start = time.perf_counter()
    pivot = choose_pivot(b, pivot_strategy)
    unary = [normalize(left_quot(b, {pivot})), normalize(right_quot(b, {pivot}))]
    unary = [u for u in unary if is_pseudo_laman(u)]
    ids, masks, examined = _split_masks(b, pivot, True)
    pairs = []
    for mask in masks:
        m = {pivot} | {eid for i, eid in enumerate(ids) if mask >> i & 1}
        n = (b.biedges - m) | {pivot}
        pairs.append((normalize(left_quot(b, m)), normalize(right_quot(b, n))))
    stats = RecursionStats(nodes=1, splits_enumerated=examined, splits_surviving=len(masks))
    tasks = unary + [x for pair in pairs for x in pair]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_worker_term, [(t, pivot_strategy) for t in tasks]))
    for _, s in results:
        s.wall_time = 0.0
        stats.merge(s)
    values = [v for v, _ in results]
    total = 0
    for v in values[: len(unary)]:
        total = checked_add(total, v)
    rest = values[len(unary):]
    for i in range(0, len(rest), 2):
        total = checked_add(total, checked_mul(rest[i], rest[i + 1]))
    stats.wall_time = time.perf_counter() - start
    return total, stats
