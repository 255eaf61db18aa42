from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodetrix.fileformat import (
    InstanceSyntaxError,
    ValidationError,
    parse,
    read_instance,
    serialize,
    witness_json,
)
from nodetrix.generate import random_clustered_graph
from nodetrix.oracle import oracle_fixed

GOOD = """nodetrix 1
model fixed
vertex a
vertex b
vertex x  # trailing comment
cluster A a b
intra a b
inter a x L -
"""


def test_parse_small():
    g = parse(GOOD)
    assert g.clusters == {"A": ("a", "b"), "x": ("x",)}
    assert g.side(("a", "x"), "A").letter == "L"


@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 4), st.booleans(), st.booleans())
def test_round_trip(seed, n, k, light, free):
    g = random_clustered_graph(random.Random(seed), n, k, light=light)
    if free:
        g = g.forget_sides()
    text = serialize(g)
    h = parse(text)
    assert h == g
    assert serialize(h) == text


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("", 1, 1),
        ("nodetrix 2\nmodel fixed\n", 1, 1),
        ("nodetrix 1\nvertex a\n", 1, 1),
        ("nodetrix 1\nmodel fixed\nvertex a b\n", 3, 10),
        ("nodetrix 1\nmodel fixed\nfoo a\n", 3, 1),
        ("nodetrix 1\nmodel fixed\ncluster A a b\nvertex a\nvertex b\nvertex x\ninter a x Q -\n", 7, 11),
        ("nodetrix 1\nmodel free\nvertex a\nvertex b\ninter a b - -\n", 5, 11),
        ("nodetrix 1\nmodel fixed\nvertex a\nvertex b\ninter a b\n", 5, 10),
    ],
)
def test_syntax_errors_locate(text, line, col):
    with pytest.raises(InstanceSyntaxError) as err:
        parse(text)
    assert (err.value.line, err.value.col) == (line, col)


def test_validation_errors_list_everything():
    text = "nodetrix 1\nmodel fixed\nvertex a\nvertex b\nvertex x\ncluster A a b\ninter a x - -\nintra a y\n"
    with pytest.raises(ValidationError) as err:
        parse(text)
    assert err.value.violations
    assert parse(text, check=False) is not None


def test_wrong_record_kind():
    text = GOOD.replace("intra a b", "inter a b T T")
    with pytest.raises(ValidationError):
        parse(text)


def test_witness_json(nonlight_path):
    g = read_instance(nonlight_path)
    v = oracle_fixed(g)
    data = json.loads(json.dumps(witness_json(g, v)))
    assert data["planar"] is True
    assert data["permutations"]["A"] == ["a2", "a3", "a1"]
    assert {s["side"] for s in data["sides"]} <= set("TRBL")
    assert data["rotation"]
