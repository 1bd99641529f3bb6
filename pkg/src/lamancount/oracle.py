"""Algebraic cross-check: count realizations by solving the edge equations.

In the coordinates ``x = X + iY``, ``y = X - iY`` each edge equation
becomes ``(x_u - x_v)(y_u - y_v) = label``.  Translations are removed by
placing a base vertex at the origin, and rotations act as
``(x, y) -> (t x, y / t)``, which is fixed by setting ``x = 1`` at an anchor
vertex adjacent to the base.  The remaining square system is solved over
GF(p) with random labels; the number of standard monomials of its Groebner
basis is the number of realizations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import GraphInputError
from .groebner import groebner_basis, is_zero_dimensional, standard_monomials
from .rigidity import SimpleGraph, is_laman

DEFAULT_PRIME = 2_147_483_647  # 2**31 - 1
ORACLE_MAX_VERTICES = 7


class OracleInconclusiveError(RuntimeError):
    """Independent random labelings kept disagreeing."""


@dataclass(frozen=True)
class PolySystem:
    variables: tuple  # names such as "x3", "y3"
    polys: tuple  # dicts: exponent tuple -> residue
    prime: int


def random_labeling(g: SimpleGraph, rng: random.Random, prime: int = DEFAULT_PRIME) -> dict:
    """Nonzero residue per edge."""
    return {e: rng.randrange(1, prime) for e in g.sorted_edges()}


def build_system(g: SimpleGraph, labels: dict, base, anchor, prime: int = DEFAULT_PRIME) -> PolySystem:
    if not is_laman(g):
        raise GraphInputError("graph is not Laman")
    if (min(base, anchor), max(base, anchor)) not in g.edges:
        raise GraphInputError(f"{{{base}, {anchor}}} is not an edge")
    names = []
    for v in sorted(g.vertices):
        if v == base:
            continue
        if v != anchor:
            names.append(f"x{v}")
        names.append(f"y{v}")
    index = {name: i for i, name in enumerate(names)}
    nvars = len(names)
    one = (0,) * nvars

    def coord(axis, v):
        # linear form as {monomial: coefficient}
        if v == base or (axis == "x" and v == anchor):
            return {one: 1} if (axis == "x" and v == anchor) else {}
        m = [0] * nvars
        m[index[f"{axis}{v}"]] = 1
        return {tuple(m): 1}

    def diff(a, b):
        out = dict(a)
        for m, c in b.items():
            out[m] = (out.get(m, 0) - c) % prime
        return {m: c for m, c in out.items() if c}

    polys = []
    for u, v in g.sorted_edges():
        dx = diff(coord("x", u), coord("x", v))
        dy = diff(coord("y", u), coord("y", v))
        f = {}
        for m1, c1 in dx.items():
            for m2, c2 in dy.items():
                t = tuple(a + b for a, b in zip(m1, m2))
                f[t] = (f.get(t, 0) + c1 * c2) % prime
        f[one] = (f.get(one, 0) - labels[(u, v)]) % prime
        polys.append({m: c for m, c in f.items() if c})
    return PolySystem(tuple(names), tuple(polys), prime)


def count_solutions(system: PolySystem, max_pairs: int = 200_000):
    """Number of standard monomials, or None when the ideal is not zero-dimensional."""
    nvars = len(system.variables)
    basis = groebner_basis(list(system.polys), system.prime, max_pairs=max_pairs)
    if not is_zero_dimensional(basis, nvars):
        return None
    return len(standard_monomials(basis, nvars))


def oracle_laman_number(g: SimpleGraph, seed: int = 0, prime: int = DEFAULT_PRIME,
                        trials: int = 3, retries: int = 5,
                        max_vertices: int = ORACLE_MAX_VERTICES) -> int:
    """Solution count agreed on by ``trials`` independent random labelings.

    Disagreement (a non-generic draw) triggers a fresh round, up to
    ``retries`` rounds; after that the result is inconclusive.
    """
    if len(g.vertices) > max_vertices:
        raise ValueError(f"oracle limited to {max_vertices} vertices, got {len(g.vertices)}")
    if not is_laman(g):
        raise GraphInputError("graph is not Laman")
    base, anchor = g.sorted_edges()[0]
    seen = []
    for attempt in range(retries):
        counts = []
        for trial in range(trials):
            rng = random.Random(f"{seed}:{attempt}:{trial}")
            system = build_system(g, random_labeling(g, rng, prime), base, anchor, prime)
            counts.append(count_solutions(system))
        seen.append(counts)
        if counts[0] is not None and all(c == counts[0] for c in counts):
            return counts[0]
    raise OracleInconclusiveError(f"labelings disagree in every round: {seen}")
