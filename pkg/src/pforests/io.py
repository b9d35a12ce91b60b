"""Poset text format, JSON (de)serialization and DOT export.

Text format::

    # comment
    n 6
    cover 3 1      # 3 <_P 1 is a cover
    4 < 1          # shorthand

JSON encodings use plain lists so that they are stable byte-for-byte:
an ideal is its sorted element list, a forest its 1-based parent array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .errors import ParseError, PosetError
from .forests import DescentData, PForest, forest_descents
from .genfun import Factor, FactoredGF, QPoly, Term
from .idealgraph import IdealGraph
from .mis import LabelMap, MaxIndSet
from .poset import Ideal, Poset, build_poset

FIXTURES = ("fig1", "fig5")


@dataclass(frozen=True)
class ParseReport:
    covers: tuple[tuple[int, int], ...]
    warnings: tuple[str, ...] = field(default=())


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_poset_text(text: str | bytes) -> tuple[Poset, ParseReport]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    pairs: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    warnings = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if n is None:
            if len(toks) != 2 or toks[0] != "n":
                raise ParseError("first line must be 'n <count>'", lineno)
            n = _int(toks[1], lineno)
            if n < 1:
                raise ParseError(f"poset must have at least one element (got n={n})", lineno)
            continue
        if toks[0] == "cover" and len(toks) == 3:
            a, b = _int(toks[1], lineno), _int(toks[2], lineno)
        elif len(toks) == 3 and toks[1] == "<":
            a, b = _int(toks[0], lineno), _int(toks[2], lineno)
        elif toks[0] == "n":
            raise ParseError("repeated 'n' line", lineno)
        else:
            raise ParseError(f"cannot parse {raw.strip()!r}; expected 'cover a b' or 'a < b'", lineno)
        for x in (a, b):
            if not 1 <= x <= n:
                raise ParseError(f"element {x} out of range 1..{n}", lineno)
        if a == b:
            raise ParseError(f"cycle: {a} < {a}", lineno)
        if (a, b) in seen:
            warnings.append(f"line {lineno}: duplicate relation {a} < {b} (first on line {seen[a, b]})")
            continue
        seen[a, b] = lineno
        pairs.append((a, b))
    if n is None:
        raise ParseError("empty input: missing 'n <count>' line")
    p = build_poset(n, pairs)
    for a, b in p.dropped:
        warnings.append(f"line {seen[a, b]}: {a} < {b} is implied by other relations; dropped")
    return p, ParseReport(tuple(p.sorted_covers()), tuple(warnings))


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise PosetError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return resources.files("pforests").joinpath("data", f"{name}.poset").read_text()


def load_poset(source: str | Path) -> tuple[Poset, ParseReport]:
    """Read a poset from a file path or a bundled ``fixture:<name>``."""
    s = str(source)
    if s.startswith("fixture:"):
        return parse_poset_text(fixture_text(s[len("fixture:"):]))
    try:
        text = Path(s).read_text()
    except OSError as exc:
        raise PosetError(f"cannot read {s}: {exc.strerror or exc}") from None
    return parse_poset_text(text)


def format_poset_text(p: Poset) -> str:
    lines = [f"n {p.n}"] + [f"cover {a} {b}" for a, b in p.sorted_covers()]
    return "\n".join(lines) + "\n"


# -- JSON ----------------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)


def _req(d: dict, key: str) -> Any:
    try:
        return d[key]
    except (KeyError, TypeError):
        raise PosetError(f"JSON object is missing {key!r}") from None


def poset_to_json(p: Poset) -> dict:
    return {"n": p.n, "covers": [list(c) for c in p.sorted_covers()]}


def poset_from_json(d: dict) -> Poset:
    return build_poset(int(_req(d, "n")), [tuple(c) for c in _req(d, "covers")])


def ideal_to_json(j: Ideal) -> list[int]:
    return list(j.elements)


def ideal_from_json(x: Sequence[int]) -> Ideal:
    if any(int(k) < 1 for k in x):
        raise PosetError("ideal elements must be positive")
    return Ideal.of(int(k) for k in x)


def ideals_to_json(ideals: Sequence[Ideal]) -> list[list[int]]:
    return [ideal_to_json(j) for j in ideals]


def ideals_from_json(xs: Sequence[Sequence[int]]) -> list[Ideal]:
    return [ideal_from_json(x) for x in xs]


def mis_to_json(m: MaxIndSet, labels: LabelMap | None = None) -> dict:
    d: dict[str, Any] = {"component": m.scope, "ideals": ideals_to_json(m.ideals)}
    if labels is not None:
        # label map as {label: ideal}, labels in increasing order
        d["labels"] = {str(k): ideal_to_json(j) for j, k in sorted(labels.items(), key=lambda t: t[1])}
    return d


def mis_from_json(d: dict) -> MaxIndSet:
    scope = d.get("component")
    return MaxIndSet(tuple(ideals_from_json(_req(d, "ideals"))), None if scope is None else int(scope))


def mis_list_to_json(sets: Sequence[MaxIndSet], labels: Sequence[LabelMap] | None = None) -> list[dict]:
    if labels is None:
        return [mis_to_json(m) for m in sets]
    return [mis_to_json(m, lm) for m, lm in zip(sets, labels)]


def mis_list_from_json(xs: Sequence[dict]) -> list[MaxIndSet]:
    return [mis_from_json(d) for d in xs]


def forest_to_json(f: PForest) -> dict:
    return {"parent": list(f.parent), "descents": sorted(forest_descents(f))}


def forest_from_json(d: dict) -> PForest:
    return PForest(tuple(int(x) for x in _req(d, "parent")))


def descents_to_json(d: DescentData) -> dict:
    return {"elements": sorted(d.element_descents), "ideals": ideals_to_json(d.sorted_ideals())}


def descents_from_json(d: dict) -> DescentData:
    return DescentData(frozenset(int(x) for x in _req(d, "elements")),
                       frozenset(ideals_from_json(_req(d, "ideals"))))


def qpoly_to_json(q: QPoly) -> list[int]:
    return list(q.coeffs)


def qpoly_from_json(xs: Sequence[int]) -> QPoly:
    return QPoly(tuple(int(x) for x in xs))


def gf_to_json(gf: FactoredGF) -> dict:
    comps = []
    for f in gf.components:
        terms = []
        for t in f.terms:
            d: dict[str, Any] = {"numerator_ideals": ideals_to_json(t.numerator_ideals),
                                 "denominator_ideals": ideals_to_json(t.denominator_ideals)}
            if t.numerator_pairs:
                d["numerator_pairs"] = [[ideal_to_json(a), ideal_to_json(b)] for a, b in t.numerator_pairs]
            terms.append(d)
        comps.append({"terms": terms})
    return {"n": gf.n, "components": comps}


def gf_from_json(d: dict) -> FactoredGF:
    comps = []
    for c in _req(d, "components"):
        terms = []
        for t in _req(c, "terms"):
            pairs = tuple((ideal_from_json(a), ideal_from_json(b)) for a, b in t.get("numerator_pairs", ()))
            terms.append(Term(tuple(ideals_from_json(_req(t, "numerator_ideals"))),
                              tuple(ideals_from_json(_req(t, "denominator_ideals"))), pairs))
        comps.append(Factor(tuple(terms)))
    return FactoredGF(int(_req(d, "n")), tuple(comps))


def graph_to_json(g: IdealGraph) -> dict:
    return {
        "vertices": ideals_to_json(g.vertices),
        "edges": [list(e) for e in g.edges()],
        "components": [list(c) for c in g.components],
        "principal": list(g.principal),
        "hp_components": [list(c) for c in g.hp_components],
    }


# -- DOT -----------------------------------------------------------------------

def graph_to_dot(g: IdealGraph, principal_only: bool = False) -> str:
    """G_P (or H_P) with one cluster per component."""
    if principal_only:
        name, comps = "H_P", g.hp_components
    else:
        name, comps = "G_P", g.components
    keep = {v for c in comps for v in c}
    lines = [f'graph "{name}" {{', "  node [shape=box];"]
    for r, comp in enumerate(comps):
        lines.append(f"  subgraph cluster_{r} {{")
        lines.append(f'    label="C{r}"; component={r};')
        for v in comp:
            lines.append(f'    v{v} [label="{g.vertices[v]}"];')
        lines.append("  }")
    for a, b in g.edges():
        if a in keep and b in keep:
            lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
