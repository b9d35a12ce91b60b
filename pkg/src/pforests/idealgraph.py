"""Connected order ideals and the intersection graph G_P.

Vertices of G_P are the nonempty connected order ideals; two vertices are
adjacent when they overlap and neither contains the other.  H_P is the
subgraph induced on the principal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded, PosetError, TheoremViolation
from .poset import (
    Ideal,
    Poset,
    generating_set,
    hasse_components,
    is_connected_ideal,
    is_connected_mask,
    iter_bits,
)

DEFAULT_MAX_IDEALS = 1_000_000


def _ideals_within(p: Poset, comp: int) -> list[int]:
    """All nonempty order ideals contained in the Hasse component ``comp``.

    Elements are decided in a topological order; an element may be included
    only when all of its lower covers are, so each ideal is produced once.
    """
    order = sorted(iter_bits(comp), key=lambda k: p.down[k].bit_count())
    below = [p.lower_covers[k] for k in range(p.n)]
    out = []

    def rec(pos: int, mask: int) -> None:
        if pos == len(order):
            if mask:
                out.append(mask)
            return
        k = order[pos]
        rec(pos + 1, mask)
        if below[k] & ~mask == 0:
            rec(pos + 1, mask | 1 << k)

    rec(0, 0)
    return out


def enumerate_connected_ideals(p: Poset, cap: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    """Every nonempty connected order ideal, ordered by (size, bitmask).

    A connected ideal lives inside one Hasse component of ``p``, so ideals
    are enumerated per component and filtered by connectivity.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    found: list[int] = []
    for comp in hasse_components(p, p.full_mask):
        for mask in _ideals_within(p, comp):
            if is_connected_mask(p, mask):
                found.append(mask)
                if len(found) > cap:
                    raise CapExceeded("connected order ideals", cap, len(found))
    found.sort(key=lambda m: (m.bit_count(), m))
    return [Ideal(m) for m in found]


def _components(adj: list[int] | tuple[int, ...], nodes: list[int]) -> list[tuple[int, ...]]:
    """Connected components of the subgraph induced on ``nodes``.

    Each component is a sorted tuple; components are ordered by their
    smallest node.
    """
    allowed = 0
    for v in nodes:
        allowed |= 1 << v
    rest = allowed
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            frontier = grow & allowed & ~comp
            comp |= frontier
        comps.append(tuple(iter_bits(comp)))
        rest &= ~comp
    return comps


@dataclass(frozen=True)
class IdealGraph:
    """G_P together with its components and the principal subgraph H_P.

    ``adj[v]`` is a bitmask over vertex indices.  ``principal[i - 1]`` is
    the vertex index of the principal ideal of element ``i``.
    """

    poset: Poset
    vertices: tuple[Ideal, ...]
    adj: tuple[int, ...] = field(repr=False)
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...] = field(repr=False)
    principal: tuple[int, ...] = field(repr=False)
    hp_components: tuple[tuple[int, ...], ...] = field(repr=False)
    index: dict[int, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_index(self, j: Ideal) -> int:
        try:
            return self.index[j.mask]
        except KeyError:
            raise PosetError(f"{j} is not a vertex of G_P") from None

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(len(self.vertices)) for b in iter_bits(self.adj[a]) if a < b]

    def component_ideals(self, r: int) -> tuple[Ideal, ...]:
        return tuple(self.vertices[v] for v in self.components[r])

    def is_independent(self, idxs) -> bool:
        mask = 0
        for v in idxs:
            mask |= 1 << v
        return all(self.adj[v] & mask == 0 for v in idxs)


def build_ideal_graph(p: Poset, ideals: list[Ideal] | None = None, cap: int = DEFAULT_MAX_IDEALS) -> IdealGraph:
    if ideals is None:
        ideals = enumerate_connected_ideals(p, cap)
    masks = [j.mask for j in ideals]
    index = {m: v for v, m in enumerate(masks)}
    if len(index) != len(masks):
        raise PosetError("duplicate ideals in vertex list")
    nv = len(masks)
    adj = [0] * nv
    for a in range(nv):
        ma = masks[a]
        for b in range(a + 1, nv):
            mb = masks[b]
            both = ma & mb
            if both and both != ma and both != mb:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    comps = _components(adj, list(range(nv)))
    component_of = [0] * nv
    for r, comp in enumerate(comps):
        for v in comp:
            component_of[v] = r
    try:
        principal = tuple(index[d] for d in p.down)
    except KeyError:
        raise PosetError("vertex list is missing a principal ideal") from None
    hp = _components(adj, list(principal))
    return IdealGraph(
        poset=p,
        vertices=tuple(ideals),
        adj=tuple(adj),
        components=tuple(comps),
        component_of=tuple(component_of),
        principal=principal,
        hp_components=tuple(hp),
        index=index,
    )


@dataclass(frozen=True)
class ChiSubgraph:
    ideal: Ideal
    vertex_set: tuple[Ideal, ...]
    vertex_indices: tuple[int, ...] = field(repr=False)


def chi_vertices(g: IdealGraph, j: Ideal) -> tuple[int, ...]:
    """Vertex indices of the principal ideals generated by gs(j)."""
    return tuple(sorted(g.principal[i - 1] for i in generating_set(g.poset, j)))


def chi_subgraph(g: IdealGraph, j: Ideal) -> ChiSubgraph:
    """The subgraph of G_P induced on {Λ_i : i in gs(j)}; checked connected."""
    if not is_connected_ideal(g.poset, j):
        raise PosetError(f"{j} is not a connected order ideal")
    idxs = chi_vertices(g, j)
    if len(_components(g.adj, list(idxs))) != 1:
        raise TheoremViolation(f"chi subgraph of {j} is disconnected")
    return ChiSubgraph(j, tuple(g.vertices[v] for v in idxs), idxs)


def component_jmax(g: IdealGraph, r: int) -> Ideal:
    """Union of the vertex ideals of component ``r``.

    It must itself be a vertex of G_P, and an isolated one.
    """
    if not 0 <= r < len(g.components):
        raise PosetError(f"no component {r}")
    mask = 0
    for v in g.components[r]:
        mask |= g.vertices[v].mask
    jmax = Ideal(mask)
    if not is_connected_mask(g.poset, mask) or mask not in g.index:
        raise TheoremViolation(f"J^max of component {r} ({jmax}) is not a connected ideal")
    if g.adj[g.index[mask]]:
        raise TheoremViolation(f"J^max of component {r} ({jmax}) is not isolated")
    return jmax


def is_forest_with_duplications(g: IdealGraph) -> bool:
    return all(a.bit_count() <= 1 for a in g.adj)
