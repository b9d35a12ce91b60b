"""Run every theorem-backed identity on one poset and collect a report.

Checks never raise: each ends up as a pass, fail or skip entry.  Skips are
budget decisions (a cap was hit, or the check is out of scope for the
input), never silent passes.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Callable

from .errors import CapExceeded, TheoremViolation
from .forests import (
    PForest,
    component_descents,
    enumerate_pforests,
    mis_descents,
    phi,
    psi,
    verify_decomposition,
)
from .genfun import (
    count_linear_extensions,
    expand_series,
    factored_fpx,
    forest_sum_gf,
    fpq,
    fpx_duplication_path,
)
from .idealgraph import (
    DEFAULT_MAX_IDEALS,
    build_ideal_graph,
    chi_subgraph,
    chi_vertices,
    component_jmax,
    is_forest_with_duplications,
)
from .mis import (
    DEFAULT_MAX_MIS,
    all_component_mis,
    enumerate_global_mis,
    label_map,
    prec,
    restrict,
    u_max,
)
from .oracle import (
    oracle_global_mis,
    oracle_linear_extension_count,
    oracle_maj_polynomial,
    oracle_ppartition_coeffs,
    oracle_pforests,
)
from .poset import Poset, is_naturally_labeled, natural_relabel


@dataclass(frozen=True)
class Budgets:
    max_ideals: int = DEFAULT_MAX_IDEALS
    max_mis: int = DEFAULT_MAX_MIS
    max_global_mis: int = 100_000
    max_extensions: int = 5_000_000
    max_decomposition: int = 50_000
    forest_oracle_max_n: int = 8
    mis_oracle_max_vertices: int = 20
    series_degree: int = 4
    # brute force P-partition maps the series oracle may visit
    series_max_maps: int = 200_000
    verify_extensions_max: int = 50
    skip_series: bool = False

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if isinstance(value, int) and not isinstance(value, bool):
                if name == "series_degree":
                    if value < 0:
                        raise ValueError("series_degree must be nonnegative")
                elif value < 1:
                    raise ValueError(f"{name} must be positive")


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skip"
    details: str = ""
    seconds: float = 0.0
    counterexample: Any = None


@dataclass
class VerificationReport:
    n: int
    covers: list[tuple[int, int]]
    naturally_labeled: bool
    relabeling: tuple[int, ...] | None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {
            "poset": {"n": self.n, "covers": [list(c) for c in self.covers],
                      "naturally_labeled": self.naturally_labeled},
            "relabeling": list(self.relabeling) if self.relabeling else None,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "details": c.details,
                 "seconds": round(c.seconds, 6), "counterexample": c.counterexample}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self, timings: bool = True) -> str:
        lines = [f"poset: n={self.n}, {len(self.covers)} covers, "
                 f"{'naturally labeled' if self.naturally_labeled else 'not naturally labeled'}"]
        if self.relabeling:
            lines.append("natural relabeling used for label-dependent checks: "
                         + " ".join(f"{i}->{k}" for i, k in enumerate(self.relabeling, start=1)))
        for c in self.checks:
            line = f"{c.status.upper():4}  {c.name}"
            if timings:
                line += f"  ({c.seconds:.3f}s)"
            if c.details:
                line += f"  {c.details}"
            lines.append(line)
            if c.counterexample is not None:
                lines.append(f"      counterexample: {json.dumps(c.counterexample)}")
        lines.append("all checks passed" if self.passed else f"{len(self.failures())} check(s) FAILED")
        return "\n".join(lines)


class Fail(Exception):
    def __init__(self, details: str, counterexample: Any = None):
        super().__init__(details)
        self.details = details
        self.counterexample = counterexample


class Skip(Exception):
    pass


def _ideal_json(j) -> list[int]:
    return list(j.elements)


def _mis_json(m) -> list[list[int]]:
    return [_ideal_json(j) for j in m.ideals]


class _Context:
    """Shared, lazily computed pipeline objects for one poset."""

    def __init__(self, p: Poset, budgets: Budgets):
        self.p = p
        self.b = budgets

    @cached_property
    def g(self):
        return build_ideal_graph(self.p, cap=self.b.max_ideals)

    @cached_property
    def per_component(self):
        return all_component_mis(self.g, self.b.max_mis)

    @cached_property
    def global_mis(self):
        return enumerate_global_mis(self.g, self.b.max_global_mis, self.per_component)

    @cached_property
    def forests(self) -> list[PForest]:
        return enumerate_pforests(self.p, self.g, self.b.max_global_mis)

    @cached_property
    def count(self) -> int:
        return count_linear_extensions(self.p, self.g, self.per_component)


# -- structural checks (any labeling) ------------------------------------------

def check_mis_size(c: _Context) -> str:
    sizes = [len(sets[0]) for sets in c.per_component]
    if sum(sizes) != c.p.n:
        raise Fail(f"component MIS sizes sum to {sum(sizes)}, expected {c.p.n}", sizes)
    for m in c.global_mis:
        if len(m) != c.p.n:
            raise Fail(f"global MIS of size {len(m)}", _mis_json(m))
    return f"{len(c.global_mis)} global MIS, each of size {c.p.n}"


def check_mis_oracle(c: _Context) -> str:
    nv = len(c.g.vertices)
    if nv > c.b.mis_oracle_max_vertices:
        raise Skip(f"{nv} vertices > {c.b.mis_oracle_max_vertices}")
    brute = oracle_global_mis(c.g)
    mine = [m.ideals for m in c.global_mis]
    theirs = [m.ideals for m in brute]
    if mine != theirs:
        extra = [m for m in theirs if m not in mine] or [m for m in mine if m not in theirs]
        raise Fail("branch and bound disagrees with subset search",
                   [_ideal_json(j) for j in extra[0]] if extra else None)
    return f"{len(brute)} sets agree"


def check_label_maps(c: _Context) -> str:
    for m in c.global_mis:
        try:
            label_map(c.p, m)
        except TheoremViolation as exc:
            raise Fail(str(exc), _mis_json(m)) from None
    return "singleton, maximal and bijective for every global MIS"


def check_u_max(c: _Context) -> str:
    for m in c.global_mis:
        for j in m.ideals:
            try:
                top = u_max(m, j)
            except TheoremViolation as exc:
                raise Fail(str(exc), {"mis": _mis_json(m), "ideal": _ideal_json(j)}) from None
            for a in m.ideals:
                if prec(m, a, j) and a not in top:
                    raise Fail(f"{a} is covered by {j} but not in U_max",
                               {"mis": _mis_json(m), "a": _ideal_json(a), "b": _ideal_json(j)})
    return "U_max disjoint; covers lie in U_max"


def check_bijection(c: _Context) -> str:
    forests = c.forests
    if len(forests) != len(c.global_mis):
        raise Fail(f"{len(forests)} forests vs {len(c.global_mis)} MIS")
    for m in c.global_mis:
        f = psi(c.p, m)
        if phi(c.p, f).ideals != m.ideals:
            raise Fail("phi(psi(M)) != M", _mis_json(m))
        labels = label_map(c.p, m)
        for i in c.p.elements:
            if f.subtree(i) != labels.ideal(i):
                raise Fail(f"subtree of {i} differs from the member labeled {i}", _mis_json(m))
    for f in forests:
        if psi(c.p, phi(c.p, f)) != f:
            raise Fail("psi(phi(F)) != F", list(f.parent))
    return f"{len(forests)} forests round-trip"


def check_forest_oracle(c: _Context) -> str:
    if c.p.n > c.b.forest_oracle_max_n:
        raise Skip(f"n={c.p.n} > {c.b.forest_oracle_max_n}")
    brute = oracle_pforests(c.p)
    if brute != c.forests:
        diff = [f for f in brute if f not in c.forests] or [f for f in c.forests if f not in brute]
        raise Fail(f"{len(brute)} forests by brute force, {len(c.forests)} via MIS",
                   list(diff[0].parent) if diff else None)
    return f"{len(brute)} forests agree"


def check_chi_connected(c: _Context) -> str:
    for j in c.g.vertices:
        try:
            chi_subgraph(c.g, j)
        except TheoremViolation as exc:
            raise Fail(str(exc), _ideal_json(j)) from None
    return f"{len(c.g.vertices)} ideals"


def check_absorption(c: _Context) -> str:
    g = c.g
    for comp in g.components:
        cmask = 0
        for v in comp:
            cmask |= 1 << v
        for v, j in enumerate(g.vertices):
            if v in comp or g.adj[v] & cmask:
                continue
            inside = [u for u in comp if g.vertices[u].is_proper_subset(j)]
            if inside and len(inside) != len(comp):
                bad = next(u for u in comp if u not in inside)
                raise Fail(f"{j} absorbs {g.vertices[inside[0]]} but not {g.vertices[bad]}",
                           {"outer": _ideal_json(j), "missing": _ideal_json(g.vertices[bad])})
    return f"{len(g.components)} components"


def check_hp_separation(c: _Context) -> str:
    g = c.g
    hp_of = {}
    for h, comp in enumerate(g.hp_components):
        for v in comp:
            hp_of[v] = h
    home = []
    for j in g.vertices:
        hs = {hp_of[v] for v in chi_vertices(g, j)}
        if len(hs) != 1:
            raise Fail(f"chi of {j} meets {len(hs)} H_P components", _ideal_json(j))
        home.append(hs.pop())
    for a, b in g.edges():
        if home[a] != home[b]:
            raise Fail(f"{g.vertices[a]} and {g.vertices[b]} are adjacent across H_P components",
                       [_ideal_json(g.vertices[a]), _ideal_json(g.vertices[b])])
    return f"{len(g.hp_components)} H_P components"


def check_jmax(c: _Context) -> str:
    g = c.g
    tops = []
    for r in range(len(g.components)):
        try:
            tops.append(component_jmax(g, r))
        except TheoremViolation as exc:
            raise Fail(str(exc), r) from None
    for v, j in enumerate(g.vertices):
        chi = set(chi_vertices(g, j))
        for r, comp in enumerate(g.components):
            if chi <= set(comp) and j != tops[r] and v not in comp:
                raise Fail(f"chi of {j} lies in component {r} but {j} does not",
                           {"ideal": _ideal_json(j), "component": r})
    return "every J^max is an isolated vertex"


def check_descent_agreement(c: _Context) -> str:
    for m in c.global_mis:
        try:
            mis_descents(c.p, m)
        except TheoremViolation as exc:
            raise Fail(str(exc), _mis_json(m)) from None
    return "forest and cover characterizations agree"


def check_decomposition(c: _Context) -> str:
    if c.count > c.b.max_decomposition:
        raise Skip(f"|L(P)|={c.count} > {c.b.max_decomposition}")
    rep = verify_decomposition(c.p, c.forests, c.b.max_extensions)
    return f"{rep.total} = " + " + ".join(map(str, rep.per_forest))


def check_count(c: _Context) -> str:
    if c.count > c.b.max_extensions:
        raise Skip(f"count {c.count} > extension budget {c.b.max_extensions}")
    brute = oracle_linear_extension_count(c.p, c.b.max_extensions)
    if brute != c.count:
        raise Fail(f"product formula gives {c.count}, enumeration gives {brute}")
    return f"|L(P)| = {c.count}"


# -- label-dependent checks (run on a naturally labeled copy) -----------------

def check_extension_independence(c: _Context) -> str:
    if len(c.global_mis) > c.b.verify_extensions_max:
        raise Skip(f"{len(c.global_mis)} global MIS > {c.b.verify_extensions_max}")
    for r, sets in enumerate(c.per_component):
        for mr in sets:
            try:
                component_descents(c.p, c.g, r, mr, c.per_component, verify_extensions=True)
            except TheoremViolation as exc:
                raise Fail(str(exc), {"component": r, "mis": _mis_json(mr)}) from None
    for m in c.global_mis:
        whole = mis_descents(c.p, m)
        elems: set[int] = set()
        ideals: set = set()
        for r in range(len(c.g.components)):
            d = component_descents(c.p, c.g, r, restrict(c.g, m, r), c.per_component)
            elems |= d.element_descents
            ideals |= d.ideal_descents
        if elems != whole.element_descents or ideals != whole.ideal_descents:
            raise Fail("component descents do not partition Des(M)", _mis_json(m))
    return "descents independent of the extension"


def check_fpq(c: _Context) -> str:
    if c.count > c.b.max_extensions:
        raise Skip(f"count {c.count} > extension budget {c.b.max_extensions}")
    q = fpq(c.p, factored_fpx(c.p, c.g, c.per_component))
    brute = oracle_maj_polynomial(c.p, c.b.max_extensions)
    if q != brute:
        raise Fail("q-polynomial differs from the maj enumeration",
                   {"formula": list(q.coeffs), "oracle": list(brute.coeffs)})
    if q(1) != c.count:
        raise Fail(f"q-polynomial at 1 is {q(1)}, count is {c.count}")
    return f"degree {q.degree}, value at 1 = {c.count}"


def _series_budget(c: _Context) -> int:
    if c.b.skip_series:
        raise Skip("series checks disabled")
    d = c.b.series_degree
    maps = math.comb(c.p.n + d, d)
    if maps > c.b.series_max_maps:
        raise Skip(f"{maps} maps to degree {d} > {c.b.series_max_maps}")
    return d


def _series_diff(a: dict, b: dict) -> Any:
    for key in sorted(set(a) | set(b)):
        if a.get(key, 0) != b.get(key, 0):
            return {"exponents": list(key), "left": a.get(key, 0), "right": b.get(key, 0)}
    return None


def check_series_ppartitions(c: _Context) -> str:
    d = _series_budget(c)
    mine = expand_series(factored_fpx(c.p, c.g, c.per_component), d)
    diff = _series_diff(mine, oracle_ppartition_coeffs(c.p, d))
    if diff:
        raise Fail("product form disagrees with P-partition enumeration", diff)
    return f"{len(mine)} monomials to degree {d}"


def check_series_forest_sum(c: _Context) -> str:
    d = _series_budget(c)
    a = expand_series(factored_fpx(c.p, c.g, c.per_component), d)
    b = expand_series(forest_sum_gf(c.p.n, c.forests), d)
    diff = _series_diff(a, b)
    if diff:
        raise Fail("product form disagrees with the sum over P-forests", diff)
    return f"degree {d}"


def check_series_duplication(c: _Context) -> str:
    if not is_forest_with_duplications(c.g):
        raise Skip("not a forest with duplications")
    d = _series_budget(c)
    a = expand_series(factored_fpx(c.p, c.g, c.per_component), d)
    b = expand_series(fpx_duplication_path(c.p, c.g), d)
    diff = _series_diff(a, b)
    if diff:
        raise Fail("duplication closed form disagrees with the product form", diff)
    return f"degree {d}"


STRUCTURAL: list[tuple[str, Callable[[_Context], str]]] = [
    ("mis-size", check_mis_size),
    ("mis-oracle", check_mis_oracle),
    ("label-map", check_label_maps),
    ("u-max", check_u_max),
    ("bijection", check_bijection),
    ("forest-oracle", check_forest_oracle),
    ("chi-connected", check_chi_connected),
    ("absorption", check_absorption),
    ("hp-separation", check_hp_separation),
    ("jmax-isolated", check_jmax),
    ("descent-agreement", check_descent_agreement),
    ("decomposition", check_decomposition),
    ("count", check_count),
]

NATURAL: list[tuple[str, Callable[[_Context], str]]] = [
    ("extension-independence", check_extension_independence),
    ("fpq-maj", check_fpq),
    ("series-ppartitions", check_series_ppartitions),
    ("series-forest-sum", check_series_forest_sum),
    ("series-duplication", check_series_duplication),
]


def _run(name: str, fn: Callable[[_Context], str], ctx: _Context) -> Check:
    t0 = time.perf_counter()
    try:
        details = fn(ctx)
        status, cx = "pass", None
    except Skip as exc:
        status, details, cx = "skip", str(exc), None
    except Fail as exc:
        status, details, cx = "fail", exc.details, exc.counterexample
    except CapExceeded as exc:
        status, details, cx = "skip", str(exc), None
    except Exception as exc:  # a crash inside a check is a failure, not a skip
        status, details, cx = "fail", f"{type(exc).__name__}: {exc}", None
    return Check(name, status, details, time.perf_counter() - t0, cx)


def verify_all(p: Poset, budgets: Budgets | None = None) -> VerificationReport:
    """Every check in scope for ``p``; label-dependent ones use a natural relabeling if needed."""
    budgets = budgets or Budgets()
    natural = is_naturally_labeled(p)
    perm = None
    ctx = _Context(p, budgets)
    nat_ctx = ctx
    if not natural:
        q, perm = natural_relabel(p)
        nat_ctx = _Context(q, budgets)
    report = VerificationReport(p.n, p.sorted_covers(), natural, perm)
    for name, fn in STRUCTURAL:
        report.checks.append(_run(name, fn, ctx))
    for name, fn in NATURAL:
        report.checks.append(_run(name, fn, nat_ctx))
    report.checks.sort(key=lambda c: c.name)
    return report

