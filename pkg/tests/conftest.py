from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pforests.io import load_poset
from pforests.oracle import random_corpus
from pforests.poset import Ideal, Poset, build_poset

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def lam(p: Poset, *gens: int) -> Ideal:
    """The ideal generated by ``gens`` (union of their principal ideals)."""
    mask = 0
    for i in gens:
        mask |= p.down[i - 1]
    return Ideal(mask)


def chain(n: int) -> Poset:
    return build_poset(n, [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    return build_poset(n, [])


@st.composite
def posets(draw, max_n: int = 6, natural: bool | None = None, min_n: int = 1) -> Poset:
    n = draw(st.integers(min_n, max_n))
    if natural is None:
        natural = draw(st.booleans())
    order = list(range(1, n + 1))
    if not natural:
        order = draw(st.permutations(order))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_poset(n, [(order[a], order[b]) for (a, b), k in zip(pairs, keep) if k])


@pytest.fixture(scope="session")
def fig1() -> Poset:
    return load_poset("fixture:fig1")[0]


@pytest.fixture(scope="session")
def fig5() -> Poset:
    return load_poset("fixture:fig5")[0]


@pytest.fixture(scope="session")
def corpus() -> list[Poset]:
    return random_corpus(200, max_n=7, seed=0, natural=True)
