"""Buchberger's algorithm over a prime field, graded reverse lexicographic.

Polynomials are dicts mapping exponent tuples to residues mod ``p``.
"""

from __future__ import annotations

from functools import lru_cache


class GroebnerBudgetError(RuntimeError):
    """The critical-pair budget ran out before the basis was complete."""


@lru_cache(maxsize=None)
def grevlex_key(m: tuple) -> tuple:
    return sum(m), tuple(-x for x in reversed(m))


def _lm(f: dict) -> tuple:
    return max(f, key=grevlex_key)


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quo(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def monic(f: dict, p: int) -> dict:
    inv = pow(f[_lm(f)], p - 2, p)
    return {m: c * inv % p for m, c in f.items()}


def reduce(f: dict, basis: list, p: int) -> dict:
    """Full normal form of ``f`` modulo a list of monic polynomials."""
    f = dict(f)
    heads = [(_lm(g), g) for g in basis]
    rem = {}
    while f:
        m = _lm(f)
        c = f.pop(m)
        for head, g in heads:
            if _divides(head, m):
                q = _quo(m, head)
                for gm, gc in g.items():
                    if gm == head:
                        continue
                    t = tuple(x + y for x, y in zip(gm, q))
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
    return rem


def _spoly(f: dict, g: dict, p: int) -> dict:
    mf, mg = _lm(f), _lm(g)
    lcm = _lcm(mf, mg)
    qf, qg = _quo(lcm, mf), _quo(lcm, mg)
    out = {}
    for m, c in f.items():
        t = tuple(x + y for x, y in zip(m, qf))
        out[t] = c
    for m, c in g.items():
        t = tuple(x + y for x, y in zip(m, qg))
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _update(G: set, B: set, h: int, lm: list) -> tuple:
    """Gebauer-Moeller installation of ``h`` into basis ``G`` with pairs ``B``.

    ``lm`` lists the leading monomial of every stored polynomial.
    """
    mh = lm[h]

    def lcm_h(i):
        return _lcm(mh, lm[i])

    # chain criterion on the new pairs
    C = set(G)
    D = set()
    while C:
        g = C.pop()
        lhg = lcm_h(g)
        coprime = all(a == 0 or b == 0 for a, b in zip(mh, lm[g]))
        if coprime or (
            not any(_divides(lcm_h(g2), lhg) for g2 in C)
            and not any(_divides(lcm_h(g2), lhg) for g2 in D)
        ):
            D.add(g)
    # product criterion
    E = {g for g in D if not all(a == 0 or b == 0 for a, b in zip(mh, lm[g]))}
    # chain criterion on old pairs
    B_new = set()
    for g1, g2 in B:
        l12 = _lcm(lm[g1], lm[g2])
        if not _divides(mh, l12) or lcm_h(g1) == l12 or lcm_h(g2) == l12:
            B_new.add((g1, g2))
    B_new |= {(g, h) for g in E}
    G_new = {g for g in G if not _divides(mh, lm[g])}
    G_new.add(h)
    return G_new, B_new


def groebner_basis(polys: list, p: int, max_pairs: int = 200_000) -> list:
    """Reduced Groebner basis (monic, sorted by leading monomial)."""
    polys = [monic(f, p) for f in polys if f]
    if not polys:
        return []
    store, heads = [], []
    G, B = set(), set()
    for f in polys:
        f = reduce(f, [store[i] for i in G], p) if G else f
        if not f:
            continue
        store.append(monic(f, p))
        heads.append(_lm(f))
        G, B = _update(G, B, len(store) - 1, heads)
    processed = 0
    while B:
        # normal selection: smallest lcm of the leading monomials
        pair = min(B, key=lambda ij: (grevlex_key(_lcm(heads[ij[0]], heads[ij[1]])), ij))
        B.discard(pair)
        processed += 1
        if processed > max_pairs:
            raise GroebnerBudgetError(f"more than {max_pairs} critical pairs")
        h = reduce(_spoly(store[pair[0]], store[pair[1]], p), [store[i] for i in sorted(G)], p)
        if h:
            store.append(monic(h, p))
            heads.append(_lm(h))
            G, B = _update(G, B, len(store) - 1, heads)
    basis = [store[i] for i in sorted(G)]
    # interreduce to the reduced basis
    reduced = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        r = reduce(g, others, p)
        if r:
            reduced.append(monic(r, p))
    reduced.sort(key=lambda f: grevlex_key(_lm(f)))
    return reduced


def leading_monomials(basis: list) -> list:
    return [_lm(g) for g in basis]


def is_zero_dimensional(basis: list, nvars: int) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    heads = leading_monomials(basis)
    if any(sum(m) == 0 for m in heads):
        return True
    for i in range(nvars):
        if not any(m[i] > 0 and sum(m) == m[i] for m in heads):
            return False
    return True


def standard_monomials(basis: list, nvars: int) -> list:
    """Monomials outside the leading-term ideal; the basis must be zero-dimensional."""
    heads = leading_monomials(basis)
    if any(sum(m) == 0 for m in heads):
        return []
    start = (0,) * nvars
    seen = {start}
    frontier = [start]
    while frontier:
        m = frontier.pop()
        for i in range(nvars):
            t = m[:i] + (m[i] + 1,) + m[i + 1:]
            if t in seen or any(_divides(h, t) for h in heads):
                continue
            seen.add(t)
            frontier.append(t)
    return sorted(seen, key=grevlex_key)
