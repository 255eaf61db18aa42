from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodetrix.generate import random_clustered_graph
from nodetrix.model import ClusteredGraph, NotLight, Side, edge, frame, is_light, light_reduce, validate


def small() -> ClusteredGraph:
    return ClusteredGraph.build(
        [("a1", "a2"), ("a1", "x"), ("a2", "b1"), ("b1", "b2")],
        {"A": ["a1", "a2"], "B": ["b1", "b2"]},
        {(("a1", "x"), "A"): Side.TOP, (("a2", "b1"), "A"): Side.RIGHT, (("a2", "b1"), "B"): Side.LEFT},
    )


def test_side_letters_round_trip():
    assert [s.letter for s in Side] == ["T", "R", "B", "L"]
    assert all(Side.from_letter(s.letter.lower()) is s for s in Side)
    with pytest.raises(ValueError):
        Side.from_letter("Q")


def test_edges_are_canonical():
    assert edge("b", "a") == ("a", "b")
    g = small()
    assert g.edges == tuple(sorted(g.edges))
    assert g.inter_edges == [("a1", "x"), ("a2", "b1")]
    assert g.intra_edges == [("a1", "a2"), ("b1", "b2")]
    assert g.nontrivial_clusters == ["A", "B"]
    assert g.cluster_of("x") == "x" and g.is_trivial("x")


def test_validate_clean_and_broken():
    g = small()
    assert validate(g) == []
    missing = g.with_sides({k: v for k, v in g.sides.items() if k[1] != "B"})
    assert [v.kind for v in validate(missing)] == ["domain"]
    extra = g.with_sides({**g.sides, (("a1", "x"), "x"): Side.TOP})
    assert [v.kind for v in validate(extra)] == ["domain"]
    overlap = ClusteredGraph(("a", "b"), (), {"A": ("a", "b"), "B": ("b",)})
    assert any(v.kind == "partition" for v in validate(overlap))
    loop = ClusteredGraph(("a",), (("a", "a"),), {"a": ("a",)})
    assert any(v.kind == "simple" for v in validate(loop))
    assert validate(g.forget_sides()) == []


def test_non_light_frame_raises():
    g = small()
    assert not is_light(g)
    with pytest.raises(NotLight):
        frame(g)
    f = frame(light_reduce(g))
    assert set(f.vertices) >= {"A", "B", "x"}


@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(1, 3))
def test_light_reduce_properties(seed, n, k):
    g = random_clustered_graph(random.Random(seed), n, k, light=False)
    h = light_reduce(g)
    assert validate(h) == []
    assert is_light(h)
    assert len(h.inter_edges) == 2 * len(g.inter_edges)
    assert h.intra_edges == g.intra_edges
    # every side survives on the half-edge at its own cluster
    for (e, c), s in g.sides.items():
        halves = [f for f in h.inter_edges if (f, c) in h.sides and h.sides[(f, c)] == s and set(f) & set(e)]
        assert halves
    assert len(h.sides) == len(g.sides)
