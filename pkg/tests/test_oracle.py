import itertools

import pytest
from hypothesis import given

from conftest import antichain, chain, posets
from pforests.errors import CapExceeded
from pforests.forests import enumerate_pforests, is_pforest
from pforests.genfun import QPoly
from pforests.idealgraph import build_ideal_graph
from pforests.oracle import (
    oracle_global_mis,
    oracle_linear_extension_count,
    oracle_maj_polynomial,
    oracle_pforests,
    oracle_ppartition_coeffs,
    random_corpus,
    random_poset,
)
from pforests.poset import build_poset, is_naturally_labeled
from pforests.verify import Budgets, verify_all


def test_maj_examples():
    assert oracle_maj_polynomial(chain(4)) == QPoly.one()
    assert oracle_maj_polynomial(antichain(2)) == QPoly((1, 1))
    assert oracle_maj_polynomial(antichain(3)) == QPoly((1, 2, 2, 1))
    assert oracle_linear_extension_count(antichain(4)) == 24


def test_ppartition_examples():
    p = build_poset(1, [])
    assert oracle_ppartition_coeffs(p, 3) == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}
    assert oracle_ppartition_coeffs(chain(2), 1) == {(0, 0): 1, (1, 0): 1}
    # reversed labels force strict decrease: f(2) > f(1)
    rev = build_poset(2, [(2, 1)])
    assert oracle_ppartition_coeffs(rev, 2) == {(0, 1): 1, (0, 2): 1}


def test_ppartition_by_hand():
    # f(1) >= f(3), f(2) >= f(3); all maps with sum <= 2
    p = build_poset(3, [(1, 3), (2, 3)])
    expect = {}
    for f in itertools.product(range(3), repeat=3):
        if sum(f) <= 2 and f[0] >= f[2] and f[1] >= f[2]:
            expect[f] = 1
    assert oracle_ppartition_coeffs(p, 2) == expect


def test_oracle_caps():
    with pytest.raises(CapExceeded):
        oracle_pforests(chain(9))
    with pytest.raises(CapExceeded):
        oracle_ppartition_coeffs(chain(2), 9)
    with pytest.raises(CapExceeded):
        oracle_linear_extension_count(antichain(5), cap=100)
    with pytest.raises(CapExceeded):
        oracle_maj_polynomial(antichain(5), cap=100)
    with pytest.raises(CapExceeded):
        oracle_global_mis(build_ideal_graph(antichain(21)))


def test_forest_oracle_examples(fig1):
    assert len(oracle_pforests(chain(4))) == 1
    assert len(oracle_pforests(antichain(3))) == 1
    found = oracle_pforests(fig1)
    assert len(found) == 3
    assert set(found) == set(enumerate_pforests(fig1))


@given(posets(max_n=6))
def test_forest_oracle_agrees(p):
    brute = oracle_pforests(p)
    assert set(brute) == set(enumerate_pforests(p))
    assert all(is_pforest(p, f) for f in brute)


def test_random_poset():
    a = random_poset(7, 0.4, 11)
    assert a == random_poset(7, 0.4, 11)
    assert is_naturally_labeled(random_poset(7, 0.5, 3, natural=True))
    assert random_poset(5, 0.0, 1).covers == frozenset()
    assert len(random_poset(5, 1.0, 1, natural=True).covers) == 4  # a chain


def test_corpus_is_reproducible():
    a = random_corpus(50, 7, 0)
    assert a == random_corpus(50, 7, 0)
    assert a != random_corpus(50, 7, 1)
    assert all(1 <= p.n <= 7 and is_naturally_labeled(p) for p in a)


def test_verify_all_small(fig1):
    for p in (fig1, chain(5), antichain(4)):
        report = verify_all(p)
        assert report.passed, report.to_text()
        skipped = {c.name for c in report.checks if c.status == "skip"}
        assert skipped <= {"series-duplication"}
    report = verify_all(fig1)
    assert [c.name for c in report.checks if c.status == "skip"] == ["series-duplication"]
    assert not report.naturally_labeled and report.relabeling is not None
    assert [c.name for c in report.checks] == sorted(c.name for c in report.checks)


def test_verify_budget_validation():
    with pytest.raises(ValueError):
        Budgets(max_ideals=0)
    with pytest.raises(ValueError):
        Budgets(series_degree=-1)


@pytest.mark.slow
def test_verify_fig5(fig5):
    report = verify_all(fig5, Budgets(skip_series=True))
    assert report.passed, report.to_text(timings=False)
    status = {c.name: c.status for c in report.checks}
    assert status["count"] == "pass" and status["fpq-maj"] == "pass"
