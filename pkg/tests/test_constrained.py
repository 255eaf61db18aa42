from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetrix.constrained import test_constrained as constrained
from nodetrix.constraints import (
    Leaf,
    MalformedConstraint,
    check_rotation,
    enumerate_embeddings_oracle,
    gc,
    mc,
    oc,
    opposed_theta,
    smc,
)
from nodetrix.decomposition.embedding import is_planar_rotation
from nodetrix.generate import random_constrained_graph


def test_opposed_theta():
    assert not constrained(*opposed_theta(0)).accepted
    assert enumerate_embeddings_oracle(*opposed_theta(0)) is None
    r = constrained(*opposed_theta(1))
    assert r.accepted
    assert check_rotation(r.embedding.rotation, opposed_theta(1)[2]) == []


def test_star_orders():
    vs = ["c", "1", "2", "3", "4"]
    es = [("c", x) for x in "1234"]
    r = constrained(vs, es, {"c": oc(Leaf("c", "1"), Leaf("c", "3"), Leaf("c", "2"), Leaf("c", "4"))})
    assert r.accepted
    rot = r.embedding.rotation["c"]
    i = rot.index("1")
    assert rot[i:] + rot[:i] == ["1", "3", "2", "4"]
    # grouping {1,2} and {3,4} against an ordered 1,3,2,4 is impossible
    t = {"c": gc(mc(Leaf("c", "1"), Leaf("c", "2")), mc(Leaf("c", "3"), Leaf("c", "4")))}
    assert constrained(vs, es, t).accepted
    both = {"c": oc(mc(Leaf("c", "1"), Leaf("c", "3")), mc(Leaf("c", "2"), Leaf("c", "4")))}
    assert constrained(vs, es, both).accepted


def test_malformed():
    with pytest.raises(MalformedConstraint):
        smc(None, Leaf("a", "b"))  # type: ignore[arg-type]


@settings(max_examples=150)
@given(st.integers(0, 10**9))
def test_agrees_with_enumeration(seed):
    vs, es, trees = random_constrained_graph(random.Random(seed))
    r = constrained(vs, es, trees)
    brute = enumerate_embeddings_oracle(vs, es, trees)
    assert r.accepted == (brute is not None)
    if r.accepted:
        rot = {v: list(x) for v, x in r.embedding.rotation.items()}
        assert is_planar_rotation(rot)
        assert check_rotation(rot, trees) == []
