"""Exact generating functions for P-partitions.

The multivariate F_P(x) is kept in factored form (``FactoredGF``): a
product over components of G_P, each factor a sum of terms

    x^{N_1} ... x^{N_a} (1 - x^{A_1} x^{B_1}) ... / ((1 - x^{D_1}) ... )

where every N, A, B, D is an ideal and x^J is the product of x_k over k in
J.  Expansion into a series is always explicit and truncated.

q-brackets follow the convention [i]_q = 1 - q^i, [m]!_q = prod [i]_q.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, LabelingError, PosetError, TheoremViolation
from .forests import DescentData, PForest, component_descents, forest_descents
from .idealgraph import IdealGraph, build_ideal_graph, is_forest_with_duplications
from .mis import MaxIndSet, all_component_mis
from .poset import Ideal, Poset, is_naturally_labeled, iter_bits

DEFAULT_MAX_MONOMIALS = 500_000


@dataclass(frozen=True)
class QPoly:
    """Dense integer polynomial in q; ``coeffs[k]`` is the coefficient of q^k."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def one(cls) -> QPoly:
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> QPoly:
        return cls((0,) * k + (c,))

    @classmethod
    def bracket(cls, i: int) -> QPoly:
        """[i]_q = 1 - q^i."""
        if i < 1:
            raise ValueError("bracket index must be positive")
        return cls((1,) + (0,) * (i - 1) + (-1,))

    @classmethod
    def qfactorial(cls, m: int) -> QPoly:
        out = cls.one()
        for i in range(1, m + 1):
            out = out * cls.bracket(i)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: QPoly) -> QPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPoly(tuple(x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)))

    def __neg__(self) -> QPoly:
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: QPoly) -> QPoly:
        return self + (-other)

    def __mul__(self, other: QPoly) -> QPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(tuple(out))

    def __divmod__(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Long division over the integers.

        Raises ValueError if a quotient coefficient would not be an integer;
        divisors built from brackets have leading coefficient ±1, so that
        never happens for them.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        if len(rem) < len(d):
            return QPoly(), self
        quot = [0] * (len(rem) - len(d) + 1)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                raise ValueError("non-integral quotient coefficient")
            t = c // lead
            quot[k] = t
            for j, y in enumerate(d):
                rem[k + j] -= t * y
        return QPoly(tuple(quot)), QPoly(tuple(rem))

    def __call__(self, x: int | Fraction) -> int | Fraction:
        acc: int | Fraction = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            elif k == 1:
                body = f"{abs(c)}*q"
            else:
                body = f"{abs(c)}*q^{k}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


@dataclass(frozen=True)
class Term:
    numerator_ideals: tuple[Ideal, ...]
    denominator_ideals: tuple[Ideal, ...]
    numerator_pairs: tuple[tuple[Ideal, Ideal], ...] = ()


@dataclass(frozen=True)
class Factor:
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class FactoredGF:
    """Product of ``components``, each a sum of terms, in variables x_1..x_n."""

    n: int
    components: tuple[Factor, ...]


def _sorted(ideals) -> tuple[Ideal, ...]:
    return tuple(sorted(ideals, key=lambda j: j.sort_key))


def factored_fpx(p: Poset, g: IdealGraph | None = None,
                 per_component: list[list[MaxIndSet]] | None = None,
                 descents: list[list[DescentData]] | None = None,
                 verify_extensions: bool = False) -> FactoredGF:
    """F_P(x) as a product over the components of G_P.

    Factor r sums, over the maximum independent sets M_r of C_r, the term
    prod_{J in barDes(M_r)} x^J / prod_{J in M_r} (1 - x^J).
    """
    if not is_naturally_labeled(p):
        raise LabelingError("the product formula needs a naturally labeled poset (relabel first)")
    if g is None:
        g = build_ideal_graph(p)
    if per_component is None:
        per_component = all_component_mis(g)
    if descents is None:
        descents = [[component_descents(p, g, r, mr, per_component, verify_extensions) for mr in sets]
                    for r, sets in enumerate(per_component)]
    factors = []
    for sets, des in zip(per_component, descents):
        terms = tuple(Term(_sorted(d.ideal_descents), mr.ideals) for mr, d in zip(sets, des))
        factors.append(Factor(terms))
    return FactoredGF(p.n, tuple(factors))


def fpx_duplication_path(p: Poset, g: IdealGraph | None = None) -> FactoredGF:
    """The closed form for naturally labeled forests with duplications.

    prod over nontrivially intersecting pairs {J_a, J_b} of (1 - x^{J_a} x^{J_b}),
    over prod over all connected ideals J of (1 - x^J); one factor, one term.
    """
    if not is_naturally_labeled(p):
        raise LabelingError("the duplication formula needs a naturally labeled poset")
    if g is None:
        g = build_ideal_graph(p)
    if not is_forest_with_duplications(g):
        raise PosetError("poset is not a forest with duplications (some G_P vertex has degree > 1)")
    pairs = tuple((g.vertices[a], g.vertices[b]) for a, b in g.edges())
    return FactoredGF(p.n, (Factor((Term((), tuple(g.vertices), pairs),)),))


def forest_sum_gf(n: int, forests: Sequence[PForest]) -> FactoredGF:
    """Sum over P-forests F of prod_{i in Des(F)} x^{Λ_i^F} / prod_j (1 - x^{Λ_j^F})."""
    terms = []
    for f in forests:
        sub = f.subtree_masks()
        num = _sorted(Ideal(sub[i - 1]) for i in forest_descents(f))
        den = _sorted(Ideal(m) for m in sub)
        terms.append(Term(num, den))
    return FactoredGF(n, (Factor(tuple(terms)),))


def fpq(p: Poset, gf: FactoredGF) -> QPoly:
    """Sum of q^maj(w) over linear extensions, from the factored form at x_i = q.

    Terms of a factor are put over the least common multiple of their
    bracket denominators (as multisets of brackets); the result times
    [n]!_q is divided exactly by the product of those denominators.
    """
    if not is_naturally_labeled(p):
        raise LabelingError("the q-specialization needs a naturally labeled poset (relabel first)")
    if gf.n != p.n:
        raise PosetError("generating function and poset disagree on n")
    num = QPoly.qfactorial(p.n)
    den = QPoly.one()
    for factor in gf.components:
        dens = [Counter(len(j) for j in t.denominator_ideals) for t in factor.terms]
        common: Counter[int] = Counter()
        for d in dens:
            common |= d
        fnum = QPoly()
        for t, d in zip(factor.terms, dens):
            tp = QPoly.monomial(sum(len(j) for j in t.numerator_ideals))
            for a, b in t.numerator_pairs:
                tp = tp * QPoly.bracket(len(a) + len(b))
            for size, mult in common.items():
                for _ in range(mult - d[size]):
                    tp = tp * QPoly.bracket(size)
            fnum = fnum + tp
        num = num * fnum
        for size, mult in sorted(common.items()):
            for _ in range(mult):
                den = den * QPoly.bracket(size)
    quot, rem = divmod(num, den)
    if not rem.is_zero():
        raise TheoremViolation(f"q-specialization left a nonzero remainder of degree {rem.degree}")
    return quot


def count_linear_extensions(p: Poset, g: IdealGraph | None = None,
                            per_component: list[list[MaxIndSet]] | None = None) -> int:
    """|L(P)| = n! * prod_r sum_{M_r} 1 / prod_{J in M_r} |J|.

    G_P depends only on the order, not on the labels, so any labeling works.
    """
    if g is None:
        g = build_ideal_graph(p)
    if per_component is None:
        per_component = all_component_mis(g)
    total = Fraction(math.factorial(p.n))
    for sets in per_component:
        s = Fraction(0)
        for mr in sets:
            s += Fraction(1, math.prod(len(j) for j in mr.ideals))
        total *= s
    if total.denominator != 1:
        raise TheoremViolation(f"linear extension count is not an integer: {total}")
    return total.numerator


# -- truncated multivariate series ------------------------------------------

Series = dict[tuple[int, ...], int]


def _exponents(n: int, ideals: Sequence[Ideal]) -> tuple[int, ...]:
    e = [0] * n
    for j in ideals:
        for k in iter_bits(j.mask):
            e[k] += 1
    return tuple(e)


def _shift(s: Series, e: tuple[int, ...], bound: int) -> Series:
    de = sum(e)
    out: Series = {}
    for m, c in s.items():
        if sum(m) + de <= bound:
            out[tuple(a + b for a, b in zip(m, e))] = c
    return out


def _add_into(acc: Series, s: Series, sign: int = 1) -> None:
    for m, c in s.items():
        v = acc.get(m, 0) + sign * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _geometric(s: Series, e: tuple[int, ...], bound: int) -> Series:
    """s / (1 - x^e), truncated at total degree ``bound``."""
    out = dict(s)
    layer = s
    while True:
        layer = _shift(layer, e, bound)
        if not layer:
            return out
        _add_into(out, layer)


def expand_series(gf: FactoredGF, degree_bound: int, cap: int = DEFAULT_MAX_MONOMIALS) -> Series:
    """Coefficients of all monomials of total degree <= ``degree_bound``.

    Keys are exponent vectors (length n); zero coefficients are omitted.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    n = gf.n
    cur: Series = {(0,) * n: 1}
    for factor in gf.components:
        nxt: Series = {}
        for t in factor.terms:
            s = _shift(cur, _exponents(n, t.numerator_ideals), degree_bound)
            for a, b in t.numerator_pairs:
                _add_into(s, _shift(s, _exponents(n, (a, b)), degree_bound), -1)
            for j in t.denominator_ideals:
                s = _geometric(s, _exponents(n, (j,)), degree_bound)
                if len(s) > cap:
                    raise CapExceeded("series monomials", cap, len(s))
            _add_into(nxt, s)
        cur = nxt
        if len(cur) > cap:
            raise CapExceeded("series monomials", cap, len(cur))
    return cur


# -- display -----------------------------------------------------------------

def _monomial_text(exps: tuple[int, ...]) -> str:
    parts = []
    for k, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{k}")
        elif e > 1:
            parts.append(f"x{k}^{e}")
    return " ".join(parts)


def format_term(n: int, t: Term) -> str:
    num_parts = []
    mono = _monomial_text(_exponents(n, t.numerator_ideals))
    if mono:
        num_parts.append(f"({mono})" if " " in mono else mono)
    for a, b in t.numerator_pairs:
        num_parts.append(f"(1 - {_monomial_text(_exponents(n, (a, b)))})")
    num = "".join(num_parts) or "1"
    dens = [f"(1 - {_monomial_text(_exponents(n, (j,)))})" for j in t.denominator_ideals]
    if not dens:
        return num
    den = dens[0] if len(dens) == 1 else "(" + "".join(dens) + ")"
    return f"{num}/{den}"


def format_gf(gf: FactoredGF) -> str:
    """Human-readable product, e.g. ``(1 - x1 x2)/((1 - x1)(1 - x2))``."""
    factors = []
    for f in gf.components:
        terms = [format_term(gf.n, t) for t in f.terms]
        factors.append(terms[0] if len(terms) == 1 else "[" + " + ".join(terms) + "]")
    return " * ".join(factors)
