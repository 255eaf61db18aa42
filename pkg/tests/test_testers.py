from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetrix.generate import random_clustered_graph, sp_chain, wheel_instance
from nodetrix.k2 import ClusterTooLarge, test_k2
from nodetrix.model import NotLight, light_reduce
from nodetrix.oracle import oracle_fixed, wheel_embedding
from nodetrix.sptester import FrameNotPartial2Tree, FrameNotSeriesParallel, test_partial_2_tree, test_series_parallel


@settings(max_examples=60)
@given(st.integers(0, 10**9), st.integers(3, 9), st.booleans())
def test_k2_agrees_with_oracle(seed, n, light):
    g = random_clustered_graph(random.Random(seed), n, 2, shape="planar", light=light, max_nontrivial=5)
    v = test_k2(g)
    assert v.planar == oracle_fixed(g).planar
    if v.planar:
        assert wheel_embedding(g, v.perms) is not None


def test_k2_refuses_big_clusters():
    g = random_clustered_graph(random.Random(1), 4, 3, p_trivial=0.0)
    with pytest.raises(ClusterTooLarge):
        test_k2(g)


@settings(max_examples=80)
@given(st.integers(0, 10**9), st.integers(2, 9), st.sampled_from(["sp", "partial2tree"]))
def test_partial_2_tree_agrees_with_oracle(seed, n, shape):
    g = random_clustered_graph(random.Random(seed), n, 3, shape=shape, max_nontrivial=5)
    v = test_partial_2_tree(g)
    assert v.planar == oracle_fixed(g).planar
    if v.planar:
        assert wheel_embedding(g, v.perms) is not None


def test_sp_requires_light_partial_2_tree():
    g = random_clustered_graph(random.Random(3), 6, 3, light=False, p_trivial=0.0)
    with pytest.raises(NotLight):
        test_partial_2_tree(g)
    w = wheel_instance(random.Random(0), 5)
    with pytest.raises(FrameNotPartial2Tree):
        test_partial_2_tree(w)


def test_series_parallel_entry_point():
    for seed in range(10):
        g = random_clustered_graph(random.Random(seed), 7, 3, shape="sp")
        assert test_series_parallel(g).planar == test_partial_2_tree(g).planar
    with pytest.raises(FrameNotSeriesParallel):
        test_series_parallel(sp_chain(random.Random(2), 10))


@pytest.mark.parametrize("seed", range(5))
def test_chains_are_planar(seed):
    g = sp_chain(random.Random(seed), 40)
    v = test_partial_2_tree(g)
    assert v.planar
    assert wheel_embedding(g, v.perms) is not None


def test_light_reduction_keeps_sp_verdict():
    g = random_clustered_graph(random.Random(11), 7, 3, light=False)
    assert test_partial_2_tree(light_reduce(g)).planar == oracle_fixed(g).planar
