import math

import pytest
from hypothesis import given

from conftest import antichain, chain, lam, posets
from pforests.errors import LabelingError, PosetError, TheoremViolation
from pforests.forests import enumerate_pforests
from pforests.genfun import (
    Factor,
    FactoredGF,
    QPoly,
    Term,
    count_linear_extensions,
    expand_series,
    factored_fpx,
    forest_sum_gf,
    format_gf,
    format_term,
    fpq,
    fpx_duplication_path,
)
from pforests.idealgraph import build_ideal_graph, is_forest_with_duplications
from pforests.mis import MaxIndSet
from pforests.oracle import (
    oracle_linear_extension_count,
    oracle_maj_polynomial,
    oracle_ppartition_coeffs,
)
from pforests.poset import Ideal, build_poset, natural_relabel, relabel

B = QPoly.bracket


def q(*coeffs):
    return QPoly(coeffs)


def test_qpoly_arithmetic():
    a = q(1, 1)
    assert a * a == q(1, 2, 1)
    assert a - a == QPoly() and (a - a).is_zero()
    assert (a + q(0, 0, 3)).coeffs == (1, 1, 3)
    assert QPoly((1, 0, 0)).coeffs == (1,)
    assert QPoly.qfactorial(3) == B(1) * B(2) * B(3)
    assert B(2) == q(1, 0, -1)
    assert q(1, 2, 1)(1) == 4 and QPoly()(5) == 0
    assert str(q(1, 2, 0, -1)) == "1 + 2*q - 1*q^3"
    assert str(QPoly()) == "0" and str(q(0, 1)) == "1*q"
    with pytest.raises(ValueError):
        B(0)


def test_qpoly_division():
    quot, rem = divmod(q(1, 2, 1), q(1, 1))
    assert quot == q(1, 1) and rem.is_zero()
    quot, rem = divmod(q(1, 0, 1), q(1, 1))
    assert quot == q(-1, 1) and rem == q(2)
    with pytest.raises(ValueError):
        divmod(q(1, 1), q(1, 2))  # 1/2 is not an integer
    with pytest.raises(ZeroDivisionError):
        divmod(q(1), QPoly())
    quot, rem = divmod(q(3), q(1, 1))
    assert quot.is_zero() and rem == q(3)


def test_fpq_small_cases():
    for n in range(1, 6):
        assert fpq(chain(n), factored_fpx(chain(n))) == QPoly.one()
    # antichain: the classical q-factorial prod (1 + q + ... + q^(i-1))
    for n in range(1, 6):
        expect = QPoly.one()
        for i in range(1, n + 1):
            expect = expect * QPoly((1,) * i)
        p = antichain(n)
        assert fpq(p, factored_fpx(p)) == expect == oracle_maj_polynomial(p)


def closed_form_fig5_fpq():
    """The four-factor closed form, rebuilt from brackets independently of the pipeline."""
    def ratio(num, *den):
        d = QPoly.one()
        for i in den:
            d = d * B(i)
        return num, d

    def add(x, y):
        return x[0] * y[1] + y[0] * x[1], x[1] * y[1]

    def mono(*exps):
        c = [0] * (max(exps) + 1)
        for e in exps:
            c[e] += 1
        return QPoly(tuple(c))

    c1 = ratio(QPoly((1, 0, 0, 2, 0, 2, 0, 0, 1)), 6, 3, 5)
    c2 = add(ratio(mono(13, 0, 14), 15, 7, 13, 14), ratio(mono(12, 26), 15, 12, 13, 14))
    c3 = add(add(ratio(mono(3), 5, 3, 4), ratio(mono(0), 5, 2, 4)), ratio(mono(3), 5, 2, 3))
    c4 = ratio(mono(0, 16), 17, 16)
    # each of the five one-element components contributes 1/[1]_q
    ones = ratio(mono(0), 1, 1, 1, 1, 1)
    num, den = QPoly.qfactorial(17), QPoly.one()
    for a, b in (c1, c2, c3, c4, ones):
        num, den = num * a, den * b
    quot, rem = divmod(num, den)
    assert rem.is_zero()
    return quot


def test_fig5_fpq(fig5):
    got = fpq(fig5, factored_fpx(fig5))
    assert got == closed_form_fig5_fpq()
    assert got(1) == 2851200
    assert count_linear_extensions(fig5) == 2851200


def test_fig5_c4_factor(fig5):
    g = build_ideal_graph(fig5)
    gf = factored_fpx(fig5, g)
    r = g.component_of[g.vertex_index(lam(fig5, 16))]
    terms = gf.components[r].terms
    assert [t.denominator_ideals for t in terms] == [(lam(fig5, 16),), (lam(fig5, 17),)]
    assert [t.numerator_ideals for t in terms] == [(), (lam(fig5, 17),)]


def test_single_element():
    p = build_poset(1, [])
    gf = factored_fpx(p)
    assert gf == FactoredGF(1, (Factor((Term((), (Ideal.of([1]),)),)),))
    assert format_gf(gf) == "1/(1 - x1)"
    assert format_gf(fpx_duplication_path(p)) == "1/(1 - x1)"
    assert count_linear_extensions(p) == 1


def test_natural_forest_matches_forest_formula():
    p = build_poset(5, [(1, 3), (2, 3), (4, 5)])
    gf = factored_fpx(p)
    for f in gf.components:
        assert len(f.terms) == 1 and not f.terms[0].numerator_ideals
        assert len(f.terms[0].denominator_ideals) == 1
    dup = fpx_duplication_path(p)
    (term,) = dup.components[0].terms
    assert term.numerator_pairs == ()
    assert set(term.denominator_ideals) == {lam(p, i) for i in p.elements}
    assert expand_series(gf, 5) == expand_series(dup, 5)


def test_duplication_pair():
    # 1,2 < 3 and 2 < 4: the principal ideals of 3 and 4 overlap in {2}
    p = build_poset(4, [(1, 3), (2, 3), (2, 4)])
    g = build_ideal_graph(p)
    assert is_forest_with_duplications(g)
    (term,) = fpx_duplication_path(p, g).components[0].terms
    assert [set(pair) for pair in term.numerator_pairs] == [{lam(p, 3), lam(p, 4)}]
    assert format_term(4, Term((), (lam(p, 3), lam(p, 4)), ((lam(p, 3), lam(p, 4)),))) == \
        "(1 - x1 x2^2 x3 x4)/((1 - x1 x2 x3)(1 - x2 x4))"
    assert expand_series(fpx_duplication_path(p, g), 6) == expand_series(factored_fpx(p, g), 6)


def test_duplication_path_refused(fig1):
    q, _ = natural_relabel(fig1)
    with pytest.raises(PosetError):
        fpx_duplication_path(q)  # a vertex of degree 2
    with pytest.raises(LabelingError):
        fpx_duplication_path(fig1)


def test_non_natural_refused(fig1):
    with pytest.raises(LabelingError):
        factored_fpx(fig1)
    q, _ = natural_relabel(fig1)
    with pytest.raises(LabelingError):
        fpq(fig1, factored_fpx(q))
    with pytest.raises(PosetError):
        fpq(chain(3), factored_fpx(chain(2)))


def test_display_style():
    t = Term((Ideal.of([1, 3, 4, 5, 6]),), (Ideal.of([1, 3, 4, 6]), Ideal.of([4, 5, 6])))
    assert format_term(6, t) == "(x1 x3 x4 x5 x6)/((1 - x1 x3 x4 x6)(1 - x4 x5 x6))"
    assert format_term(2, Term((), ())) == "1"


def test_count_examples(fig1):
    assert count_linear_extensions(fig1) == 10 == oracle_linear_extension_count(fig1)
    for n in range(1, 7):
        assert count_linear_extensions(antichain(n)) == math.factorial(n)


def test_series_examples():
    gf = FactoredGF(1, (Factor((Term((), (Ideal.of([1]),)),)),))
    assert expand_series(gf, 3) == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}
    assert expand_series(factored_fpx(chain(2)), 2) == {(0, 0): 1, (1, 0): 1, (2, 0): 1, (1, 1): 1}
    assert oracle_ppartition_coeffs(chain(2), 1) == {(0, 0): 1, (1, 0): 1}
    with pytest.raises(ValueError):
        expand_series(gf, -1)


def test_series_fig1(fig1):
    q, perm = natural_relabel(fig1)
    assert expand_series(factored_fpx(q), 4) == oracle_ppartition_coeffs(q, 4)


def test_exactness_guards():
    # denominators that cannot divide [2]!_q
    bad = FactoredGF(2, (Factor((Term((), (Ideal.of([1, 2, 3]),)),)),))
    with pytest.raises(TheoremViolation):
        fpq(chain(2), bad)
    p = chain(2)
    with pytest.raises(TheoremViolation):
        count_linear_extensions(p, build_ideal_graph(p), [[MaxIndSet((Ideal.of([1, 2, 3]),))]])


@given(posets(max_n=6, natural=True))
def test_fpq_matches_maj(p):
    g = build_ideal_graph(p)
    got = fpq(p, factored_fpx(p, g))
    assert got == oracle_maj_polynomial(p)
    assert got(1) == count_linear_extensions(p, g)


@given(posets(max_n=6))
def test_count_is_label_free(p):
    c = count_linear_extensions(p)
    assert c == oracle_linear_extension_count(p)
    assert count_linear_extensions(natural_relabel(p)[0]) == c
    rev = tuple(range(p.n, 0, -1))
    assert count_linear_extensions(relabel(p, rev)) == c


@given(posets(max_n=5, natural=True))
def test_series_identities(p):
    g = build_ideal_graph(p)
    product = expand_series(factored_fpx(p, g), 5)
    assert product == oracle_ppartition_coeffs(p, 5)
    assert product == expand_series(forest_sum_gf(p.n, enumerate_pforests(p, g)), 5)
    if is_forest_with_duplications(g):
        assert product == expand_series(fpx_duplication_path(p, g), 5)
