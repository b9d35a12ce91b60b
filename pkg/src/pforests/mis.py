"""Maximum independent sets of G_P and the μ / U_max / label machinery."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapExceeded, PosetError, TheoremViolation
from .idealgraph import IdealGraph, component_jmax
from .poset import Ideal, Poset, iter_bits

DEFAULT_MAX_MIS = 100_000
DEFAULT_MAX_GLOBAL_MIS = 1_000_000


@dataclass(frozen=True)
class MaxIndSet:
    """A maximum independent set, global (``scope is None``) or of one component."""

    ideals: tuple[Ideal, ...]
    scope: int | None = None

    def __iter__(self) -> Iterator[Ideal]:
        return iter(self.ideals)

    def __len__(self) -> int:
        return len(self.ideals)

    def __contains__(self, j: Ideal) -> bool:
        return j in self.ideals

    def __str__(self) -> str:
        return "{" + ", ".join(str(j) for j in self.ideals) + "}"


def _require_member(m: MaxIndSet, j: Ideal) -> None:
    if j not in m.ideals:
        raise PosetError(f"{j} is not a member of {m}")


def mu(m: MaxIndSet, j: Ideal) -> Ideal:
    """Union of the members of ``m`` strictly contained in ``j``."""
    _require_member(m, j)
    mask = 0
    for other in m.ideals:
        if other.is_proper_subset(j):
            mask |= other.mask
    return Ideal(mask)


def u_max(m: MaxIndSet, j: Ideal) -> tuple[Ideal, ...]:
    """Inclusion-maximal members strictly inside ``j``.  They are pairwise disjoint."""
    _require_member(m, j)
    inside = [x for x in m.ideals if x.is_proper_subset(j)]
    top = tuple(x for x in inside if not any(x.is_proper_subset(y) for y in inside))
    for a, b in itertools.combinations(top, 2):
        if a.intersects(b):
            raise TheoremViolation(f"U_max({j}) members {a} and {b} intersect")
    return top


def prec(m: MaxIndSet, a: Ideal, b: Ideal) -> bool:
    """Cover relation of ``m`` under inclusion: a ⊂ b with no member strictly between."""
    _require_member(m, a)
    _require_member(m, b)
    if not a.is_proper_subset(b):
        return False
    return not any(a.is_proper_subset(x) and x.is_proper_subset(b) for x in m.ideals)


@dataclass(frozen=True)
class LabelMap:
    """Bijection between the members of a global MIS and the elements 1..n.

    The member labeled ``j`` is the one with J \\ μ(M, J) = {j}.
    """

    by_label: tuple[Ideal, ...]

    def ideal(self, label: int) -> Ideal:
        return self.by_label[label - 1]

    def label(self, j: Ideal) -> int:
        return self.by_label.index(j) + 1

    def items(self) -> list[tuple[Ideal, int]]:
        return [(j, k) for k, j in enumerate(self.by_label, start=1)]


def label_map(p: Poset, m: MaxIndSet) -> LabelMap:
    if len(m) != p.n:
        raise TheoremViolation(f"global MIS has {len(m)} members, expected {p.n}")
    slots: list[Ideal | None] = [None] * p.n
    for j in m.ideals:
        rest = j.mask & ~mu(m, j).mask
        if rest.bit_count() != 1:
            raise TheoremViolation(f"{j} minus μ is {Ideal(rest)}, not a singleton")
        k = rest.bit_length() - 1
        if p.up[k] & j.mask != rest:
            raise TheoremViolation(f"label {k + 1} is not maximal in {j}")
        if slots[k] is not None:
            raise TheoremViolation(f"label {k + 1} assigned to both {slots[k]} and {j}")
        slots[k] = j
    return LabelMap(tuple(slots))


def _order_by_degree(g: IdealGraph, verts: Sequence[int]) -> tuple[list[int], list[int]]:
    """Renumber ``verts`` by ascending degree; return (order, adjacency over positions)."""
    order = sorted(verts, key=lambda v: (g.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    adjpos = []
    for v in order:
        mask = 0
        for u in iter_bits(g.adj[v]):
            if u in pos:
                mask |= 1 << pos[u]
        adjpos.append(mask)
    return order, adjpos


def _max_size(adjpos: list[int], full: int) -> int:
    best = 0

    def rec(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        low = cand & -cand
        k = low.bit_length() - 1
        rec(cand & ~low & ~adjpos[k], size + 1)
        rec(cand & ~low, size)

    rec(full, 0)
    return best


def _all_of_size(adjpos: list[int], full: int, target: int, cap: int, what: str) -> list[int]:
    found: list[int] = []

    def rec(cand: int, chosen: int, size: int) -> None:
        if size + cand.bit_count() < target:
            return
        if not cand:
            found.append(chosen)
            if len(found) > cap:
                raise CapExceeded(what, cap, len(found))
            return
        low = cand & -cand
        k = low.bit_length() - 1
        rec(cand & ~low & ~adjpos[k], chosen | low, size + 1)
        rec(cand & ~low, chosen, size)

    rec(full, 0, 0)
    return found


def maximum_independent_sets(g: IdealGraph, verts: Sequence[int], cap: int = DEFAULT_MAX_MIS,
                             what: str = "maximum independent sets") -> list[tuple[int, ...]]:
    """All maximum independent sets of the subgraph induced on ``verts``.

    Exhaustive branch and bound: vertices taken in ascending-degree order,
    pruned by current size plus remaining candidates.  Each set is a sorted
    tuple of vertex indices; the list is sorted.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if not verts:
        return [()]
    order, adjpos = _order_by_degree(g, verts)
    full = (1 << len(order)) - 1
    target = _max_size(adjpos, full)
    sets = []
    for chosen in _all_of_size(adjpos, full, target, cap, what):
        sets.append(tuple(sorted(order[i] for i in iter_bits(chosen))))
    sets.sort()
    return sets


def enumerate_component_mis(g: IdealGraph, r: int, cap: int = DEFAULT_MAX_MIS) -> list[MaxIndSet]:
    if not 0 <= r < len(g.components):
        raise PosetError(f"no component {r}")
    sets = maximum_independent_sets(g, g.components[r], cap, f"maximum independent sets of component {r}")
    return [MaxIndSet(tuple(g.vertices[v] for v in s), scope=r) for s in sets]


def all_component_mis(g: IdealGraph, cap: int = DEFAULT_MAX_MIS) -> list[list[MaxIndSet]]:
    """Per-component MIS lists, indexed by component id."""
    return [enumerate_component_mis(g, r, cap) for r in range(len(g.components))]


def _check_total_size(g: IdealGraph, per_comp: list[list[MaxIndSet]]) -> None:
    total = sum(len(sets[0]) for sets in per_comp)
    if total != g.poset.n:
        raise TheoremViolation(f"maximum independent sets have size {total}, expected n={g.poset.n}")


def combine(parts: Sequence[MaxIndSet]) -> MaxIndSet:
    """Glue one MIS per component into a global MIS (canonical member order)."""
    ideals = sorted((j for part in parts for j in part.ideals), key=lambda j: j.sort_key)
    return MaxIndSet(tuple(ideals))


def enumerate_global_mis(g: IdealGraph, cap: int = DEFAULT_MAX_GLOBAL_MIS,
                         per_component: list[list[MaxIndSet]] | None = None,
                         component_cap: int = DEFAULT_MAX_MIS) -> list[MaxIndSet]:
    """All maximum independent sets of G_P, as products of per-component choices."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if per_component is None:
        per_component = all_component_mis(g, component_cap)
    _check_total_size(g, per_component)
    total = 1
    for sets in per_component:
        total *= len(sets)
    if total > cap:
        raise CapExceeded("global maximum independent sets", cap, total)
    out = [combine(choice) for choice in itertools.product(*per_component)]
    out.sort(key=lambda m: [j.sort_key for j in m.ideals])
    return out


def restrict(g: IdealGraph, m: MaxIndSet, r: int) -> MaxIndSet:
    """M ∩ V(C_r)."""
    keep = set(g.components[r])
    return MaxIndSet(tuple(j for j in m.ideals if g.index[j.mask] in keep), scope=r)


@dataclass(frozen=True)
class ComponentSummary:
    component_id: int
    vertex_ideals: tuple[Ideal, ...]
    jmax: Ideal
    mis_size: int
    mis_count: int


def summarize_components(g: IdealGraph, per_component: list[list[MaxIndSet]] | None = None,
                         cap: int = DEFAULT_MAX_MIS) -> list[ComponentSummary]:
    if per_component is None:
        per_component = all_component_mis(g, cap)
    out = []
    for r, sets in enumerate(per_component):
        out.append(ComponentSummary(r, g.component_ideals(r), component_jmax(g, r),
                                    len(sets[0]), len(sets)))
    return out
