"""Brute-force reference implementations.

Everything here is deliberately naive and built only on the poset
primitives, so it can be used to check the main pipeline without sharing
its code paths.
"""

from __future__ import annotations

import random
from typing import Iterator

from .errors import CapExceeded
from .forests import PForest
from .genfun import QPoly
from .idealgraph import IdealGraph
from .mis import MaxIndSet
from .poset import (
    Poset,
    build_poset,
    hasse_components,
    is_connected_mask,
    is_down_closed,
    linear_extensions,
    major_index,
)

MAX_EXTENSIONS = 5_000_000
MAX_FOREST_N = 8
MAX_SERIES_DEGREE = 8
MAX_MIS_VERTICES = 20


def oracle_maj_polynomial(p: Poset, cap: int = MAX_EXTENSIONS) -> QPoly:
    """Sum of q^maj(w) over every linear extension, by direct enumeration."""
    counts: dict[int, int] = {}
    seen = 0
    for w in linear_extensions(p):
        seen += 1
        if seen > cap:
            raise CapExceeded("linear extensions", cap, seen)
        k = major_index(w)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts)
    return QPoly(tuple(counts.get(k, 0) for k in range(top + 1)))


def oracle_linear_extension_count(p: Poset, cap: int = MAX_EXTENSIONS) -> int:
    seen = 0
    for _ in linear_extensions(p):
        seen += 1
        if seen > cap:
            raise CapExceeded("linear extensions", cap, seen)
    return seen


def _maps_with_sum_at_most(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    vals = [0] * n

    def rec(k: int, left: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(vals)
            return
        for v in range(left + 1):
            vals[k] = v
            yield from rec(k + 1, left - v)

    yield from rec(0, bound)


def oracle_ppartition_coeffs(p: Poset, degree_bound: int) -> dict[tuple[int, ...], int]:
    """Count P-partitions f with sum(f) <= bound, keyed by exponent vector.

    Conditions: i <_P j implies f(i) >= f(j), strictly when also i > j.
    """
    if not 0 <= degree_bound <= MAX_SERIES_DEGREE:
        raise CapExceeded("series degree", MAX_SERIES_DEGREE, degree_bound)
    rel = [(i, j) for i in p.elements for j in p.elements if p.lt(i, j)]
    out: dict[tuple[int, ...], int] = {}
    for f in _maps_with_sum_at_most(p.n, degree_bound):
        ok = True
        for i, j in rel:
            a, b = f[i - 1], f[j - 1]
            if a < b or (i > j and a == b):
                ok = False
                break
        if ok:
            out[f] = out.get(f, 0) + 1
    return out


def oracle_pforests(p: Poset) -> list[PForest]:
    """Filter every rooted forest on {1..n} by the P-forest conditions.

    Two prunings are applied while choosing parents, both forced by the
    definition: a node's parent is never strictly below it in P (the
    subtree is an ideal), and lies in the same Hasse component (the
    subtree is connected).
    """
    n = p.n
    if n > MAX_FOREST_N:
        raise CapExceeded("forest oracle size", MAX_FOREST_N, n)
    comp_of = [0] * n
    for c, mask in enumerate(hasse_components(p, p.full_mask)):
        for k in range(n):
            if mask >> k & 1:
                comp_of[k] = c
    options = []
    for i in range(1, n + 1):
        opts = [i]
        for j in range(1, n + 1):
            if j != i and not p.lt(j, i) and comp_of[j - 1] == comp_of[i - 1]:
                opts.append(j)
        options.append(opts)

    parent = [0] * n
    found = []

    def closes_cycle(i: int) -> bool:
        k = parent[i - 1]
        steps = 0
        while k != i and steps <= n:
            nxt = parent[k - 1]
            if nxt == 0 or nxt == k:
                return False
            k = nxt
            steps += 1
        return True

    def check() -> bool:
        sub = [0] * n
        for i in range(1, n + 1):
            k = i
            while True:
                sub[k - 1] |= 1 << (i - 1)
                if parent[k - 1] == k:
                    break
                k = parent[k - 1]
        for mask in sub:
            if not is_down_closed(p, mask) or not is_connected_mask(p, mask):
                return False
        for a in range(n):
            for b in range(a + 1, n):
                if sub[a] & sub[b] == 0 and is_connected_mask(p, sub[a] | sub[b]):
                    return False
        return True

    def rec(i: int) -> None:
        if i > n:
            if check():
                found.append(PForest(tuple(parent)))
            return
        for j in options[i - 1]:
            parent[i - 1] = j
            if j != i and closes_cycle(i):
                continue
            rec(i + 1)
        parent[i - 1] = 0

    rec(1)
    found.sort(key=lambda f: f.parent)
    return found


def oracle_global_mis(g: IdealGraph) -> list[MaxIndSet]:
    """All largest independent sets, by walking every independent vertex subset."""
    nv = len(g.vertices)
    if nv > MAX_MIS_VERTICES:
        raise CapExceeded("MIS oracle vertices", MAX_MIS_VERTICES, nv)
    best: list[int] = []
    best_size = -1

    def rec(v: int, chosen: int, size: int) -> None:
        nonlocal best, best_size
        if v == nv:
            if size > best_size:
                best_size, best = size, [chosen]
            elif size == best_size:
                best.append(chosen)
            return
        rec(v + 1, chosen, size)
        if g.adj[v] & chosen == 0:
            rec(v + 1, chosen | 1 << v, size + 1)

    rec(0, 0, 0)
    out = []
    for chosen in best:
        out.append(MaxIndSet(tuple(g.vertices[v] for v in range(nv) if chosen >> v & 1)))
    out.sort(key=lambda m: [j.sort_key for j in m.ideals])
    return out


def random_poset(n: int, rho: float, seed: int | random.Random, natural: bool = False) -> Poset:
    """Random poset: order a permutation, keep each forward pair with probability rho.

    With ``natural`` the permutation is the identity, so the result is
    naturally labeled.  Transitively implied pairs are reduced away.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    perm = list(range(1, n + 1))
    if not natural:
        rng.shuffle(perm)
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < rho:
                pairs.append((perm[a], perm[b]))
    return build_poset(n, pairs)


def random_corpus(count: int = 200, max_n: int = 7, seed: int = 0, natural: bool = True) -> list[Poset]:
    """A reproducible list of random posets with 1 <= n <= max_n, rho alternating 0.2 / 0.4."""
    out = []
    for k in range(count):
        rng = random.Random(seed * 1_000_003 + k)
        n = rng.randint(1, max_n)
        rho = (0.2, 0.4)[k % 2]
        out.append(random_poset(n, rho, rng, natural))
    return out

