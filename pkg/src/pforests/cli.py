"""Command-line front end: ``pforests <subcommand> [options]``.

Exit status: 0 success, 1 input error, 2 cap exceeded, 3 theorem violation
(including failed checks in ``verify``).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from .errors import CapExceeded, PosetError, TheoremViolation
from .forests import DEFAULT_MAX_EXTENSIONS, component_descents, enumerate_pforests, forest_descents
from .genfun import count_linear_extensions, factored_fpx, format_gf, fpq, fpx_duplication_path
from .idealgraph import DEFAULT_MAX_IDEALS, build_ideal_graph, component_jmax
from .io import (
    descents_to_json,
    dumps,
    forest_to_json,
    format_poset_text,
    gf_to_json,
    graph_to_dot,
    graph_to_json,
    ideals_to_json,
    load_poset,
    mis_to_json,
    parse_poset_text,
    poset_to_json,
    qpoly_to_json,
)
from .mis import DEFAULT_MAX_MIS, all_component_mis, enumerate_global_mis, label_map
from .oracle import random_poset
from .poset import Poset, is_naturally_labeled, natural_relabel
from .verify import Budgets, verify_all

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_THEOREM = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    input: str = "-"
    format: str = "text"
    max_ideals: int = DEFAULT_MAX_IDEALS
    max_mis: int = DEFAULT_MAX_MIS
    max_extensions: int = DEFAULT_MAX_EXTENSIONS
    series_degree: int = 4
    relabel: bool = False
    seed: int = 0
    verify_extensions: bool = False
    duplication_path: bool = False
    no_timings: bool = False
    n: int = 6
    rho: float = 0.3
    natural: bool = False

    def __post_init__(self) -> None:
        for name in ("max_ideals", "max_mis", "max_extensions"):
            if getattr(self, name) < 1:
                raise PosetError(f"--{name.replace('_', '-')} must be positive")
        if self.series_degree < 0:
            raise PosetError("--series-degree must be nonnegative")


class _Run:
    """State for one invocation; ``stage`` names what is running for diagnostics."""

    def __init__(self, cfg: RunConfig, out: TextIO, err: TextIO, stdin: TextIO):
        self.cfg = cfg
        self.out = out
        self.err = err
        self.stdin = stdin
        self.stage = "setup"
        self.perm: tuple[int, ...] | None = None

    def emit(self, text: str) -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def notice(self, text: str) -> None:
        self.err.write(f"notice: {text}\n")

    def poset(self, need_natural: bool = False, implied: bool = False) -> Poset:
        self.stage = "parse"
        if self.cfg.input == "-":
            p, report = parse_poset_text(self.stdin.read())
        else:
            p, report = load_poset(self.cfg.input)
        for w in report.warnings:
            self.err.write(f"warning: {w}\n")
        if is_naturally_labeled(p):
            return p
        if self.cfg.relabel or implied:
            self.stage = "relabel"
            p, self.perm = natural_relabel(p)
            if not self.cfg.relabel:
                self.notice("input is not naturally labeled; relabeling (the count does not depend on labels)")
            self.notice("relabeled " + _perm_text(self.perm))
            return p
        if need_natural:
            raise PosetError(f"'{self.cfg.command}' needs a naturally labeled poset; rerun with --relabel")
        return p

    def graph(self, p: Poset):
        self.stage = "ideal-graph"
        return build_ideal_graph(p, cap=self.cfg.max_ideals)

    def per_component(self, g):
        self.stage = "mis"
        return all_component_mis(g, self.cfg.max_mis)

    def with_perm(self, d: dict) -> dict:
        if self.perm is not None:
            d["relabeling"] = list(self.perm)
        return d


def _perm_text(perm: tuple[int, ...]) -> str:
    return " ".join(f"{i}->{k}" for i, k in enumerate(perm, start=1))


def _no_dot(run: _Run) -> None:
    if run.cfg.format == "dot":
        raise PosetError("--format dot is only available for 'graph'")


# -- subcommands ---------------------------------------------------------------

def cmd_poset(run: _Run) -> int:
    _no_dot(run)
    p = run.poset()
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm(poset_to_json(p))))
    else:
        run.emit(format_poset_text(p))
    return EXIT_OK


def cmd_ideals(run: _Run) -> int:
    _no_dot(run)
    p = run.poset()
    g = run.graph(p)
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm({"n": p.n, "ideals": ideals_to_json(g.vertices)})))
    else:
        run.emit("\n".join(str(j) for j in g.vertices))
    return EXIT_OK


def cmd_graph(run: _Run) -> int:
    p = run.poset()
    g = run.graph(p)
    fmt = run.cfg.format
    if fmt == "dot":
        run.emit(graph_to_dot(g) + graph_to_dot(g, principal_only=True))
    elif fmt == "json":
        run.emit(dumps(run.with_perm(graph_to_json(g))))
    else:
        lines = [f"{len(g.vertices)} vertices, {len(g.edges())} edges, {len(g.components)} components"]
        for r, comp in enumerate(g.components):
            lines.append(f"C{r}: " + " ".join(str(g.vertices[v]) for v in comp))
        lines.append("edges:")
        lines += [f"  {g.vertices[a]} -- {g.vertices[b]}" for a, b in g.edges()]
        lines.append("H_P components:")
        for comp in g.hp_components:
            lines.append("  " + " ".join(str(g.vertices[v]) for v in comp))
        run.emit("\n".join(lines))
    return EXIT_OK


def cmd_mis(run: _Run) -> int:
    _no_dot(run)
    p = run.poset()
    g = run.graph(p)
    per = run.per_component(g)
    natural = is_naturally_labeled(p)
    des = None
    if natural:
        run.stage = "descents"
        des = [[component_descents(p, g, r, mr, per, run.cfg.verify_extensions) for mr in sets]
               for r, sets in enumerate(per)]
    run.stage = "mis"
    glob = enumerate_global_mis(g, run.cfg.max_mis, per)
    labels = [label_map(p, m) for m in glob]
    if run.cfg.format == "json":
        comps = []
        for r, sets in enumerate(per):
            entry = {"component": r, "jmax": list(component_jmax(g, r).elements),
                     "size": len(sets[0]), "sets": [mis_to_json(m) for m in sets]}
            if des is not None:
                entry["descents"] = [descents_to_json(d) for d in des[r]]
            comps.append(entry)
        body = {"components": comps, "global": [mis_to_json(m, lm) for m, lm in zip(glob, labels)]}
        run.emit(dumps(run.with_perm(body)))
        return EXIT_OK
    lines = []
    for r, sets in enumerate(per):
        lines.append(f"C{r}: {len(sets)} MIS of size {len(sets[0])}, J^max = {component_jmax(g, r)}")
        for k, m in enumerate(sets):
            line = f"  {m}"
            if des is not None:
                d = des[r][k]
                line += (f"  Des = {{{','.join(map(str, sorted(d.element_descents)))}}}"
                         f"  barDes = {{{', '.join(str(j) for j in d.sorted_ideals())}}}")
            lines.append(line)
    lines.append(f"global: {len(glob)} MIS of size {p.n}")
    for m, lm in zip(glob, labels):
        lines.append("  " + ", ".join(f"{k}:{j}" for j, k in sorted(lm.items(), key=lambda t: t[1])))
    run.emit("\n".join(lines))
    return EXIT_OK


def cmd_forests(run: _Run) -> int:
    _no_dot(run)
    p = run.poset()
    g = run.graph(p)
    run.stage = "forests"
    forests = enumerate_pforests(p, g, run.cfg.max_mis)
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm({"n": p.n, "forests": [forest_to_json(f) for f in forests]})))
        return EXIT_OK
    blocks = []
    for k, f in enumerate(forests, start=1):
        head = (f"F{k}: parent {' '.join(map(str, f.parent))}"
                f"  Des = {{{','.join(map(str, sorted(forest_descents(f))))}}}")
        blocks.append(head + "\n" + "\n".join("  " + line for line in f.render().splitlines()))
    run.emit(f"{len(forests)} P-forests\n" + "\n".join(blocks))
    return EXIT_OK


def cmd_fpx(run: _Run) -> int:
    _no_dot(run)
    p = run.poset(need_natural=True)
    g = run.graph(p)
    if run.cfg.duplication_path:
        run.stage = "genfun"
        gf = fpx_duplication_path(p, g)
    else:
        per = run.per_component(g)
        run.stage = "genfun"
        gf = factored_fpx(p, g, per, verify_extensions=run.cfg.verify_extensions)
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm(gf_to_json(gf))))
    else:
        run.emit(format_gf(gf))
    return EXIT_OK


def cmd_fpq(run: _Run) -> int:
    _no_dot(run)
    p = run.poset(need_natural=True)
    g = run.graph(p)
    per = run.per_component(g)
    run.stage = "genfun"
    q = fpq(p, factored_fpx(p, g, per, verify_extensions=run.cfg.verify_extensions))
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm({"coeffs": qpoly_to_json(q)})))
    else:
        run.emit(str(q))
    return EXIT_OK


def cmd_count(run: _Run) -> int:
    _no_dot(run)
    p = run.poset(implied=True)
    g = run.graph(p)
    per = run.per_component(g)
    run.stage = "count"
    c = count_linear_extensions(p, g, per)
    if run.cfg.format == "json":
        run.emit(dumps(run.with_perm({"count": c})))
    else:
        run.emit(str(c))
    return EXIT_OK


def cmd_verify(run: _Run) -> int:
    _no_dot(run)
    p = run.poset()  # verify relabels internally where labels matter
    run.stage = "verify"
    cfg = run.cfg
    budgets = Budgets(max_ideals=cfg.max_ideals, max_mis=cfg.max_mis, max_global_mis=cfg.max_mis,
                      max_extensions=cfg.max_extensions, series_degree=cfg.series_degree,
                      verify_extensions_max=cfg.max_mis if cfg.verify_extensions else Budgets.verify_extensions_max)
    report = verify_all(p, budgets)
    if cfg.format == "json":
        run.emit(report.to_json())
    else:
        run.emit(report.to_text(timings=not cfg.no_timings))
    return EXIT_OK if report.passed else EXIT_THEOREM


def cmd_gen(run: _Run) -> int:
    _no_dot(run)
    cfg = run.cfg
    if cfg.n < 1:
        raise PosetError("--n must be positive")
    if not 0 <= cfg.rho <= 1:
        raise PosetError("--rho must lie in [0, 1]")
    p = random_poset(cfg.n, cfg.rho, cfg.seed, cfg.natural)
    if cfg.format == "json":
        run.emit(dumps(poset_to_json(p)))
    else:
        run.emit(f"# random poset: n={cfg.n} rho={cfg.rho} seed={cfg.seed}"
                 f"{' natural' if cfg.natural else ''}\n" + format_poset_text(p))
    return EXIT_OK


COMMANDS: dict[str, tuple[Callable[[_Run], int], str]] = {
    "poset": (cmd_poset, "echo the parsed (reduced) poset"),
    "ideals": (cmd_ideals, "list the connected order ideals"),
    "graph": (cmd_graph, "the ideal graph G_P and its principal subgraph H_P"),
    "mis": (cmd_mis, "maximum independent sets per component and globally"),
    "forests": (cmd_forests, "P-forests with their descent sets"),
    "fpx": (cmd_fpx, "factored multivariate P-partition generating function"),
    "fpq": (cmd_fpq, "sum of q^maj over linear extensions"),
    "count": (cmd_count, "number of linear extensions"),
    "verify": (cmd_verify, "run every identity against brute-force oracles"),
    "gen": (cmd_gen, "emit a random poset"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", default="-",
                        help="poset file, 'fixture:fig1' / 'fixture:fig5', or '-' for stdin (default)")
    common.add_argument("--format", "-f", choices=("text", "json", "dot"), default="text")
    common.add_argument("--max-ideals", type=int, default=DEFAULT_MAX_IDEALS)
    common.add_argument("--max-mis", type=int, default=DEFAULT_MAX_MIS)
    common.add_argument("--max-extensions", type=int, default=DEFAULT_MAX_EXTENSIONS)
    common.add_argument("--series-degree", type=int, default=4)
    common.add_argument("--relabel", action="store_true",
                        help="relabel along the lexicographically first linear extension")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify-extensions", action="store_true",
                        help="check component descents against every extension")

    parser = argparse.ArgumentParser(prog="pforests", description="P-forests and P-partition generating functions")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "fpx":
            sp.add_argument("--duplication-path", action="store_true",
                            help="closed form for forests with duplications")
        elif name == "verify":
            sp.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")
        elif name == "gen":
            sp.add_argument("--n", type=int, default=6)
            sp.add_argument("--rho", type=float, default=0.3)
            sp.add_argument("--natural", action="store_true")
    return parser


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None,
        stdin: TextIO | None = None) -> int:
    r = _Run(cfg, out or sys.stdout, err or sys.stderr, stdin or sys.stdin)
    try:
        return COMMANDS[cfg.command][0](r)
    except PosetError as exc:
        r.err.write(f"error [{r.stage}]: {exc}\n")
        return EXIT_INPUT
    except CapExceeded as exc:
        r.err.write(f"error [{r.stage}]: {exc}; raise the matching --max-* option\n")
        return EXIT_CAP
    except TheoremViolation as exc:
        r.err.write(f"THEOREM VIOLATION [{r.stage}]: {exc}\n")
        return EXIT_THEOREM


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fields = set(RunConfig.__dataclass_fields__)
    try:
        cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    except PosetError as exc:
        sys.stderr.write(f"error [setup]: {exc}\n")
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
