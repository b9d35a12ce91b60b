"""P-forests, the bijection with maximum independent sets of G_P, and descents."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, LabelingError, PosetError, TheoremViolation
from .idealgraph import IdealGraph, build_ideal_graph
from .mis import (
    DEFAULT_MAX_GLOBAL_MIS,
    MaxIndSet,
    all_component_mis,
    combine,
    enumerate_global_mis,
    label_map,
    prec,
)
from .poset import (
    Ideal,
    Poset,
    build_poset,
    is_connected_mask,
    is_down_closed,
    is_naturally_labeled,
    linear_extensions,
)

DEFAULT_MAX_EXTENSIONS = 5_000_000


@dataclass(frozen=True)
class PForest:
    """A rooted forest on {1..n}; ``parent[i - 1]`` is i's parent, roots point to themselves.

    The forest order has every node below its ancestors.  Whether the forest
    is a P-forest for a given poset is checked separately (``is_pforest``).
    """

    parent: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.parent)
        if n == 0:
            raise PosetError("empty forest")
        for i, p in enumerate(self.parent, start=1):
            if not 1 <= p <= n:
                raise PosetError(f"parent {p} of {i} out of range")
        for i in range(1, n + 1):
            seen = {i}
            k = i
            while self.parent[k - 1] != k:
                k = self.parent[k - 1]
                if k in seen:
                    raise PosetError(f"parent map has a cycle through {k}")
                seen.add(k)

    @property
    def n(self) -> int:
        return len(self.parent)

    def parent_of(self, i: int) -> int | None:
        p = self.parent[i - 1]
        return None if p == i else p

    def roots(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.parent[i - 1] == i]

    def children(self, i: int) -> list[int]:
        return [c for c in range(1, self.n + 1) if c != i and self.parent[c - 1] == i]

    def subtree_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for i in range(1, self.n + 1):
            k = i
            while True:
                masks[k - 1] |= 1 << (i - 1)
                if self.parent[k - 1] == k:
                    break
                k = self.parent[k - 1]
        return tuple(masks)

    def subtree(self, i: int) -> Ideal:
        """Λ_i^F, the nodes at or below ``i``."""
        return Ideal(self.subtree_masks()[i - 1])

    def as_poset(self) -> Poset:
        return build_poset(self.n, [(i, p) for i, p in enumerate(self.parent, start=1) if p != i])

    def render(self) -> str:
        lines: list[str] = []

        def walk(i: int, depth: int) -> None:
            lines.append("  " * depth + str(i))
            for c in self.children(i):
                walk(c, depth + 1)

        for r in self.roots():
            walk(r, 0)
        return "\n".join(lines)


def forest_descents(f: PForest) -> frozenset[int]:
    """Nodes larger than their parent."""
    return frozenset(i for i, p in enumerate(f.parent, start=1) if p != i and i > p)


def pforest_violation(p: Poset, f: PForest) -> str | None:
    """Why ``f`` is not a P-forest of ``p``, or None if it is."""
    if f.n != p.n:
        return f"forest has {f.n} nodes, poset has {p.n}"
    sub = f.subtree_masks()
    for i, mask in enumerate(sub, start=1):
        if not is_down_closed(p, mask) or not is_connected_mask(p, mask):
            return f"subtree of {i} is {Ideal(mask)}, not a connected order ideal"
    for a, b in itertools.combinations(range(p.n), 2):
        ma, mb = sub[a], sub[b]
        if ma & mb:
            continue  # comparable in F: one subtree contains the other
        if is_connected_mask(p, ma | mb):
            return f"subtrees of incomparable {a + 1} and {b + 1} have a connected union"
    return None


def is_pforest(p: Poset, f: PForest) -> bool:
    return pforest_violation(p, f) is None


def phi(p: Poset, f: PForest) -> MaxIndSet:
    """F ↦ {Λ_1^F, ..., Λ_n^F}."""
    why = pforest_violation(p, f)
    if why:
        raise PosetError(f"not a P-forest: {why}")
    ideals = sorted((Ideal(m) for m in f.subtree_masks()), key=lambda j: j.sort_key)
    for a, b in itertools.combinations(ideals, 2):
        both = a.mask & b.mask
        if both and both != a.mask and both != b.mask:
            raise TheoremViolation(f"subtrees {a} and {b} intersect nontrivially")
    if len(set(ideals)) != p.n:
        raise TheoremViolation("subtree ideals are not distinct")
    return MaxIndSet(tuple(ideals))


def psi(p: Poset, m: MaxIndSet) -> PForest:
    """M ↦ F_M: i's parent is the label of the smallest member strictly containing J_i."""
    labels = label_map(p, m)
    parent = []
    for i in range(1, p.n + 1):
        j = labels.ideal(i)
        above = [x for x in m.ideals if j.is_proper_subset(x)]
        if above:
            # members above J_i form a chain, so the smallest is the ≺_M cover
            parent.append(labels.label(min(above, key=lambda x: x.sort_key)))
        else:
            parent.append(i)
    try:
        f = PForest(tuple(parent))
    except PosetError as exc:
        raise TheoremViolation(f"F_M is not a forest: {exc}") from exc
    why = pforest_violation(p, f)
    if why:
        raise TheoremViolation(f"F_M is not a P-forest: {why}")
    back = sorted((Ideal(x) for x in f.subtree_masks()), key=lambda j: j.sort_key)
    if tuple(back) != tuple(sorted(m.ideals, key=lambda j: j.sort_key)):
        raise TheoremViolation("phi(psi(M)) != M")
    return f


def enumerate_pforests(p: Poset, g: IdealGraph | None = None, cap: int = DEFAULT_MAX_GLOBAL_MIS) -> list[PForest]:
    """All P-forests, as Ψ applied to every maximum independent set of G_P."""
    if g is None:
        g = build_ideal_graph(p)
    forests = [psi(p, m) for m in enumerate_global_mis(g, cap)]
    forests.sort(key=lambda f: f.parent)
    return forests


@dataclass(frozen=True)
class DescentData:
    element_descents: frozenset[int]
    ideal_descents: frozenset[Ideal]

    def sorted_ideals(self) -> list[Ideal]:
        return sorted(self.ideal_descents, key=lambda j: j.sort_key)


def mis_descents(p: Poset, m: MaxIndSet) -> DescentData:
    """Des(M) = Des(Ψ(M)), cross-checked against the ≺_M characterization."""
    labels = label_map(p, m)
    via_forest = forest_descents(psi(p, m))
    via_prec = set()
    for i in range(1, p.n + 1):
        a = labels.ideal(i)
        if any(prec(m, a, labels.ideal(j)) for j in range(1, i)):
            via_prec.add(i)
    if via_prec != via_forest:
        raise TheoremViolation(
            f"descent characterizations disagree: forest {sorted(via_forest)}, ≺_M {sorted(via_prec)}")
    return DescentData(via_forest, frozenset(labels.ideal(i) for i in via_forest))


def descents_within(p: Poset, m: MaxIndSet, part: MaxIndSet) -> DescentData:
    """Des(M_r, M) and its ideal version, for a part M_r of the global set M."""
    labels = label_map(p, m)
    des = mis_descents(p, m).element_descents
    members = set(part.ideals)
    elems = frozenset(i for i in des if labels.ideal(i) in members)
    return DescentData(elems, frozenset(labels.ideal(i) for i in elems))


def component_descents(p: Poset, g: IdealGraph, r: int, mr: MaxIndSet,
                       per_component: list[list[MaxIndSet]] | None = None,
                       verify_extensions: bool = False) -> DescentData:
    """Des(M_r) and its barred version for a naturally labeled poset.

    Computed from the canonically first extension of ``mr`` to a global
    MIS.  With ``verify_extensions`` every extension is tried and the
    results must all agree.
    """
    if not is_naturally_labeled(p):
        raise LabelingError("component descents are only defined for naturally labeled posets")
    if per_component is None:
        per_component = all_component_mis(g)
    if mr.ideals not in [s.ideals for s in per_component[r]]:
        raise PosetError(f"{mr} is not a maximum independent set of component {r}")
    mr = MaxIndSet(mr.ideals, scope=r)
    choices: list[Sequence[MaxIndSet]] = [
        [mr] if s == r else sets for s, sets in enumerate(per_component)]
    first = descents_within(p, combine([c[0] for c in choices]), mr)
    if verify_extensions:
        for combo in itertools.product(*choices):
            other = descents_within(p, combine(combo), mr)
            if other != first:
                raise TheoremViolation(
                    f"component {r} descents depend on the extension: {sorted(first.element_descents)} "
                    f"vs {sorted(other.element_descents)}")
    return first


@dataclass(frozen=True)
class DecompositionReport:
    total: int
    per_forest: tuple[int, ...]


def verify_decomposition(p: Poset, forests: Sequence[PForest] | None = None,
                         cap: int = DEFAULT_MAX_EXTENSIONS) -> DecompositionReport:
    """Check that L(P) is the disjoint union of L(F) over the P-forests F."""
    if forests is None:
        forests = enumerate_pforests(p)
    all_words = set()
    for w in linear_extensions(p):
        all_words.add(w)
        if len(all_words) > cap:
            raise CapExceeded("linear extensions", cap, len(all_words))
    seen: set[tuple[int, ...]] = set()
    counts = []
    for f in forests:
        c = 0
        for w in linear_extensions(f.as_poset()):
            if w not in all_words:
                raise TheoremViolation(f"{w} extends forest {f.parent} but not the poset")
            if w in seen:
                raise TheoremViolation(f"{w} extends more than one P-forest")
            seen.add(w)
            c += 1
        counts.append(c)
    if len(seen) != len(all_words):
        missing = min(all_words - seen)
        raise TheoremViolation(f"linear extension {missing} is not covered by any P-forest")
    return DecompositionReport(len(all_words), tuple(counts))
