from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetrix.generate import random_clustered_graph, wheel_instance
from nodetrix.model import light_reduce
from nodetrix.oracle import (
    accepting_permutations,
    default_budget,
    oracle_fixed,
    oracle_free,
    permutation_space,
    wheel_embedding,
)
from nodetrix.verdict import BudgetExceeded
from nodetrix.wheel import wheel_reduction


@settings(max_examples=40)
@given(st.integers(0, 10**9), st.integers(2, 6))
def test_pruning_keeps_the_verdict(seed, n):
    g = random_clustered_graph(random.Random(seed), n, 3, shape="planar", max_nontrivial=3)
    assert oracle_fixed(g).planar == oracle_fixed(g, prune=False).planar


@settings(max_examples=40)
@given(st.integers(0, 10**9), st.integers(2, 6))
def test_light_reduction_invariance(seed, n):
    g = random_clustered_graph(random.Random(seed), n, 3, shape="planar", light=False, max_nontrivial=3)
    assert oracle_fixed(g).planar == oracle_fixed(light_reduce(g)).planar


def test_witness_hubs_follow_cycles():
    g = wheel_instance(random.Random(4), 4)
    v = oracle_fixed(g)
    assert v.planar
    red = wheel_reduction(g, v.perms)
    for w in red.wheels.values():
        rot = v.embedding[w.hub]
        i = rot.index(w.cycle[0])
        assert tuple(rot[i:] + rot[:i]) == w.cycle


def test_budget():
    g = wheel_instance(random.Random(12), 5)
    with pytest.raises(BudgetExceeded):
        oracle_fixed(g, budget=10)
    with pytest.raises(BudgetExceeded):
        oracle_fixed(g, budget=10, prune=False)
    assert oracle_fixed(g).planar


def test_default_budget_env(monkeypatch):
    monkeypatch.setenv("NTP_BUDGET", "77")
    assert default_budget() == 77
    monkeypatch.delenv("NTP_BUDGET")
    assert default_budget() == 10**6


def test_permutation_space_and_accepting():
    g = random_clustered_graph(random.Random(5), 4, 3, p_trivial=0.0)
    space = permutation_space(g)
    assert space >= 1
    acc = accepting_permutations(g, prune=False)
    assert len(acc) <= space
    for p in acc:
        assert wheel_embedding(g, p) is not None


def test_free_oracle_finds_sides():
    g = random_clustered_graph(random.Random(6), 4, 2, max_nontrivial=2)
    v = oracle_free(g.forget_sides())
    fixed = oracle_fixed(g)
    if fixed.planar:
        assert v.planar
    if v.planar:
        assert oracle_fixed(g.with_sides(v.sides)).planar
