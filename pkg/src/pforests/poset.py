"""Finite posets on {1..n}, order ideals and linear extensions.

Element sets are Python ints used as bit-vectors: element ``k`` lives in
bit ``k - 1``.  The public functions speak 1-based labels.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import PosetError

log = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def labels_to_mask(labels: Iterable[int]) -> int:
    mask = 0
    for k in labels:
        mask |= 1 << (k - 1)
    return mask


def mask_to_labels(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in iter_bits(mask))


@dataclass(frozen=True, slots=True)
class Ideal:
    """A subset of {1..n}, normally down-closed in some contextual poset.

    Set algebra is by bitmask.  ``sort_key`` gives the canonical order used
    throughout: by size, then by mask value.
    """

    mask: int

    @classmethod
    def of(cls, labels: Iterable[int]) -> Ideal:
        return cls(labels_to_mask(labels))

    @property
    def elements(self) -> tuple[int, ...]:
        return mask_to_labels(self.mask)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.mask.bit_count(), self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, label: int) -> bool:
        return label >= 1 and bool(self.mask >> (label - 1) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: Ideal) -> Ideal:
        return Ideal(self.mask | other.mask)

    def __and__(self, other: Ideal) -> Ideal:
        return Ideal(self.mask & other.mask)

    def issubset(self, other: Ideal) -> bool:
        return self.mask & ~other.mask == 0

    def is_proper_subset(self, other: Ideal) -> bool:
        return self.mask != other.mask and self.mask & ~other.mask == 0

    def intersects(self, other: Ideal) -> bool:
        return self.mask & other.mask != 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self) -> str:
        return f"Ideal({self})"


def intersect_nontrivially(a: Ideal, b: Ideal) -> bool:
    """The edge rule of G_P: overlap without either containing the other."""
    both = a.mask & b.mask
    return both != 0 and both != a.mask and both != b.mask


@dataclass(frozen=True)
class Poset:
    """A poset on {1..n} given by its (reduced) cover relations.

    ``down[k]`` / ``up[k]`` are the bitmasks of the elements below / above
    element ``k + 1`` (both inclusive).  ``dropped`` lists input pairs that
    were discarded as transitively implied.
    """

    n: int
    covers: frozenset[tuple[int, int]]
    down: tuple[int, ...] = field(repr=False)
    up: tuple[int, ...] = field(repr=False)
    lower_covers: tuple[int, ...] = field(repr=False)
    upper_covers: tuple[int, ...] = field(repr=False)
    dropped: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b - 1] >> (a - 1) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def neighbors_mask(self, k: int) -> int:
        """Undirected Hasse-diagram neighbours of element index ``k`` (0-based)."""
        return self.lower_covers[k] | self.upper_covers[k]

    def sorted_covers(self) -> list[tuple[int, int]]:
        return sorted(self.covers)


def build_poset(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    """Build a poset from pairs ``(a, b)`` meaning ``a <_P b``.

    The pairs may contain transitively implied relations; those are dropped
    from the cover set (and logged).  Raises PosetError on n < 1, labels out
    of range, or a cycle.
    """
    if n < 1:
        raise PosetError(f"poset must have at least one element (got n={n})")
    pairs = set()
    for a, b in covers:
        a, b = int(a), int(b)
        for x in (a, b):
            if not 1 <= x <= n:
                raise PosetError(f"element {x} out of range 1..{n}")
        if a == b:
            raise PosetError(f"cycle: {a} < {a}")
        pairs.add((a, b))

    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in pairs:
        succ[a - 1].append(b - 1)
        indeg[b - 1] += 1

    # Kahn; leftover vertices lie on a cycle
    order = [k for k in range(n) if indeg[k] == 0]
    head = 0
    while head < len(order):
        k = order[head]
        head += 1
        for s in succ[k]:
            indeg[s] -= 1
            if indeg[s] == 0:
                order.append(s)
    if len(order) < n:
        stuck = sorted(k + 1 for k in range(n) if indeg[k] > 0)
        raise PosetError(f"cycle among elements {stuck}")

    down = [1 << k for k in range(n)]
    for k in order:
        for s in succ[k]:
            down[s] |= down[k]
    up = [1 << k for k in range(n)]
    for k in reversed(order):
        for s in succ[k]:
            up[k] |= up[s]

    reduced = set()
    dropped = []
    for a, b in sorted(pairs):
        between = (up[a - 1] & ~(1 << (a - 1))) & (down[b - 1] & ~(1 << (b - 1)))
        if between:
            dropped.append((a, b))
        else:
            reduced.add((a, b))
    if dropped:
        log.debug("dropped %d transitively implied relation(s): %s", len(dropped), dropped)

    lower = [0] * n
    upper = [0] * n
    for a, b in reduced:
        lower[b - 1] |= 1 << (a - 1)
        upper[a - 1] |= 1 << (b - 1)
    return Poset(
        n=n,
        covers=frozenset(reduced),
        down=tuple(down),
        up=tuple(up),
        lower_covers=tuple(lower),
        upper_covers=tuple(upper),
        dropped=tuple(dropped),
    )


def is_naturally_labeled(p: Poset) -> bool:
    # it suffices to look at covers: i <_P j is a chain of covers
    return all(a < b for a, b in p.covers)


def natural_relabel(p: Poset) -> tuple[Poset, tuple[int, ...]]:
    """Relabel ``p`` along its lexicographically smallest linear extension.

    Returns the relabeled poset and ``perm`` with ``perm[i - 1]`` the new
    label of old element ``i``.  Naturally labeled input comes back equal,
    with the identity permutation.
    """
    first = next(linear_extensions(p))
    perm = [0] * p.n
    for pos, old in enumerate(first, start=1):
        perm[old - 1] = pos
    q = build_poset(p.n, [(perm[a - 1], perm[b - 1]) for a, b in p.covers])
    return q, tuple(perm)


def relabel(p: Poset, perm: Iterable[int]) -> Poset:
    """Apply an arbitrary relabeling ``i -> perm[i - 1]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(1, p.n + 1)):
        raise PosetError("relabeling must be a permutation of 1..n")
    return build_poset(p.n, [(perm[a - 1], perm[b - 1]) for a, b in p.covers])


def _check_element(p: Poset, i: int) -> None:
    if not 1 <= i <= p.n:
        raise PosetError(f"element {i} out of range 1..{p.n}")


def principal_ideal(p: Poset, i: int) -> Ideal:
    _check_element(p, i)
    return Ideal(p.down[i - 1])


def is_down_closed(p: Poset, mask: int) -> bool:
    return all(p.down[k] & ~mask == 0 for k in iter_bits(mask))


def hasse_components(p: Poset, mask: int) -> list[int]:
    """Connected components of the Hasse diagram restricted to ``mask``."""
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for k in iter_bits(frontier):
                grow |= p.lower_covers[k] | p.upper_covers[k]
            frontier = grow & mask & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(p: Poset, mask: int) -> bool:
    return mask != 0 and len(hasse_components(p, mask)) == 1


def is_connected_ideal(p: Poset, j: Ideal) -> bool:
    """True iff ``j`` is nonempty and its Hasse diagram is connected."""
    if j.mask & ~p.full_mask:
        raise PosetError(f"{j} is not a subset of 1..{p.n}")
    if not is_down_closed(p, j.mask):
        raise PosetError(f"{j} is not an order ideal")
    return is_connected_mask(p, j.mask)


def maximal_mask(p: Poset, mask: int) -> int:
    out = 0
    for k in iter_bits(mask):
        if p.up[k] & mask == 1 << k:
            out |= 1 << k
    return out


def generating_set(p: Poset, j: Ideal) -> frozenset[int]:
    """The maximal elements of a nonempty ideal."""
    if not j:
        raise PosetError("the empty ideal has no generating set")
    if not is_down_closed(p, j.mask):
        raise PosetError(f"{j} is not an order ideal")
    return frozenset(mask_to_labels(maximal_mask(p, j.mask)))


def linear_extensions(p: Poset) -> Iterator[tuple[int, ...]]:
    """Every linear extension of ``p``, in lexicographic order of words."""
    n = p.n
    below = tuple(d & ~(1 << k) for k, d in enumerate(p.down))
    upper = p.upper_covers
    word = [0] * n

    def rec(depth: int, placed: int, avail: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            yield tuple(word)
            return
        m = avail
        while m:
            low = m & -m
            m ^= low
            k = low.bit_length() - 1
            now = placed | low
            nxt = avail ^ low
            for u in iter_bits(upper[k]):
                if below[u] & ~now == 0:
                    nxt |= 1 << u
            word[depth] = k + 1
            yield from rec(depth + 1, now, nxt)

    minimal = 0
    for k in range(n):
        if below[k] == 0:
            minimal |= 1 << k
    yield from rec(0, 0, minimal)


def descent_set(w: Iterable[int]) -> frozenset[int]:
    w = tuple(w)
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def major_index(w: Iterable[int]) -> int:
    return sum(descent_set(w))
