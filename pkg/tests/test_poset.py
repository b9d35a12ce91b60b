import itertools

import pytest
from hypothesis import given

from conftest import antichain, chain, posets
from pforests.errors import PosetError
from pforests.poset import (
    Ideal,
    build_poset,
    descent_set,
    generating_set,
    hasse_components,
    is_connected_ideal,
    is_down_closed,
    is_naturally_labeled,
    linear_extensions,
    major_index,
    natural_relabel,
    principal_ideal,
    relabel,
)


def closure(n, pairs):
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def test_fig1_order(fig1):
    assert fig1.lt(3, 2)
    assert fig1.lt(6, 5)
    assert not fig1.comparable(3, 5)
    assert fig1.sorted_covers() == [(1, 2), (3, 1), (4, 1), (4, 5), (6, 4)]


def test_antichain_leq_is_identity():
    p = antichain(3)
    assert all(p.leq(a, b) == (a == b) for a in range(1, 4) for b in range(1, 4))


def test_transitive_pair_dropped():
    p = build_poset(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert p.covers == frozenset({(1, 2), (2, 3), (3, 4)})
    assert p.dropped == ((1, 4),)
    assert p.lt(1, 4)


@pytest.mark.parametrize("n,pairs", [
    (0, []),
    (2, [(1, 3)]),
    (2, [(0, 1)]),
    (2, [(1, 2), (2, 1)]),
    (3, [(1, 2), (2, 3), (3, 1)]),
    (1, [(1, 1)]),
])
def test_build_rejects(n, pairs):
    with pytest.raises(PosetError):
        build_poset(n, pairs)


@given(posets(max_n=7))
def test_reduction_preserves_closure(p):
    raw = [(a, b) for a in p.elements for b in p.elements if p.lt(a, b)]
    again = build_poset(p.n, raw)
    assert again == p
    assert closure(p.n, p.covers) == set(raw)
    # covers are really covers
    for a, b in p.covers:
        assert not any(p.lt(a, c) and p.lt(c, b) for c in p.elements)


def test_natural_labeling(fig1):
    assert not is_naturally_labeled(build_poset(2, [(2, 1)]))
    assert is_naturally_labeled(antichain(4))
    assert is_naturally_labeled(chain(4))
    # 3 < 1 in the fig1 fixture, so by definition it is not natural
    assert not is_naturally_labeled(fig1)


def test_natural_relabel_examples():
    q, perm = natural_relabel(build_poset(2, [(2, 1)]))
    assert q.covers == {(1, 2)} and perm == (2, 1)
    q, perm = natural_relabel(build_poset(3, [(3, 1), (3, 2)]))
    assert q.covers == {(1, 2), (1, 3)}
    assert perm == (2, 3, 1)
    p = chain(4)
    q, perm = natural_relabel(p)
    assert q == p and perm == (1, 2, 3, 4)


@given(posets(max_n=7))
def test_natural_relabel_is_natural_isomorphism(p):
    q, perm = natural_relabel(p)
    assert is_naturally_labeled(q)
    for a in p.elements:
        for b in p.elements:
            assert p.leq(a, b) == q.leq(perm[a - 1], perm[b - 1])
    assert relabel(p, perm) == q


def test_relabel_rejects_non_permutation():
    with pytest.raises(PosetError):
        relabel(chain(3), (1, 1, 2))


def test_principal_ideals(fig1):
    assert principal_ideal(fig1, 2) == Ideal.of([1, 2, 3, 4, 6])
    assert principal_ideal(fig1, 5) == Ideal.of([4, 5, 6])
    assert principal_ideal(antichain(3), 2) == Ideal.of([2])
    with pytest.raises(PosetError):
        principal_ideal(fig1, 7)


@given(posets(max_n=7))
def test_principal_ideals_connected(p):
    for i in p.elements:
        j = principal_ideal(p, i)
        assert is_down_closed(p, j.mask)
        assert is_connected_ideal(p, j)
        assert generating_set(p, j) == {i}


def test_connected_ideal(fig1):
    assert is_connected_ideal(fig1, Ideal.of([4, 6]))
    assert not is_connected_ideal(fig1, Ideal.of([3, 6]))
    assert is_connected_ideal(fig1, Ideal.of([3]))
    assert not is_connected_ideal(fig1, Ideal(0))
    with pytest.raises(PosetError):
        is_connected_ideal(fig1, Ideal.of([1]))


def test_generating_set(fig5, fig1):
    j = principal_ideal(fig5, 4) | principal_ideal(fig5, 5) | principal_ideal(fig5, 6)
    assert generating_set(fig5, j) == {4, 5, 6}
    assert generating_set(antichain(3), Ideal.of([1, 2])) == {1, 2}
    with pytest.raises(PosetError):
        generating_set(fig1, Ideal(0))
    with pytest.raises(PosetError):
        generating_set(fig1, Ideal.of([1]))


def all_down_sets(p):
    for mask in range(1, 1 << p.n):
        if is_down_closed(p, mask):
            yield Ideal(mask)


@given(posets(max_n=6))
def test_ideal_is_union_of_generators(p):
    for j in all_down_sets(p):
        mask = 0
        for i in generating_set(p, j):
            mask |= p.down[i - 1]
        assert mask == j.mask


def test_linear_extension_examples(fig1):
    assert list(linear_extensions(chain(3))) == [(1, 2, 3)]
    assert len(list(linear_extensions(antichain(3)))) == 6
    assert len(list(linear_extensions(fig1))) == 10


@given(posets(max_n=6))
def test_linear_extensions_match_filter(p):
    brute = [w for w in itertools.permutations(p.elements)
             if all(not p.lt(w[j], w[i]) for i in range(p.n) for j in range(i + 1, p.n))]
    assert list(linear_extensions(p)) == brute  # permutations() is lexicographic too


def test_descents():
    assert descent_set((1, 3, 2)) == {2} and major_index((1, 3, 2)) == 2
    assert descent_set(range(1, 6)) == set() and major_index(range(1, 6)) == 0
    assert descent_set((3, 2, 1)) == {1, 2} and major_index((3, 2, 1)) == 3


def test_hasse_components(fig1):
    assert hasse_components(fig1, Ideal.of([3, 6]).mask) == [0b100, 0b100000]
    assert len(hasse_components(antichain(4), 0b1111)) == 4


def test_ideal_algebra():
    a, b = Ideal.of([1, 2]), Ideal.of([2, 3])
    assert (a | b) == Ideal.of([1, 2, 3]) and (a & b) == Ideal.of([2])
    assert 2 in a and 3 not in a and 0 not in a
    assert str(Ideal.of([6, 1, 3])) == "{1,3,6}"
    assert Ideal.of([1]).is_proper_subset(a) and not a.is_proper_subset(a)
    assert len(a) == 2 and list(a) == [1, 2]
