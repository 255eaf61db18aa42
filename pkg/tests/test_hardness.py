from __future__ import annotations

from itertools import product

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodetrix.hardness import (
    FormulaSyntaxError,
    Nae3SatFormula,
    cluster_frame,
    find_crossings,
    is_rim_wheel,
    is_triconnected,
    layout_formula,
    nae_brute,
    parse_formula,
    parse_formula_list,
    reduce_fixed,
    reduce_free,
    serialize_formula,
    small_formulas,
    variable_value,
    wire_parity,
    witness_permutations,
)
from nodetrix.model import Side, validate
from nodetrix.oracle import wheel_embedding

literal = st.tuples(st.booleans(), st.sampled_from("abcd")).map(lambda t: ("-" if t[0] else "") + t[1])
formulas = st.lists(st.lists(literal, min_size=3, max_size=3).map(" ".join), min_size=1, max_size=4)


@given(formulas)
def test_formula_round_trip(clauses):
    phi = Nae3SatFormula.of(*clauses)
    assert parse_formula(serialize_formula(phi)) == phi


@given(formulas)
def test_nae_brute_is_exhaustive(clauses):
    phi = Nae3SatFormula.of(*clauses)
    a = nae_brute(phi)
    sat = [dict(zip(phi.variables, vs)) for vs in product((False, True), repeat=len(phi.variables))]
    sat = [x for x in sat if phi.satisfied_by(x)]
    assert (a is None) == (not sat)
    if a is not None:
        assert a == sat[0]


def test_formula_syntax():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("x y\n")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("x y 3z\n")
    phi = parse_formula("vars q\nx ~y z  # comment\n")
    assert phi.variables == ("q", "x", "y", "z")
    assert len(parse_formula_list("x y z\n---\n# only a comment\n---\na b c\n")) == 2


def test_bundled_formulas_are_small():
    fs = small_formulas()
    assert len(fs) >= 10
    assert all(len(f.clauses) <= 2 and len(f.variables) <= 4 for f in fs)
    assert any(nae_brute(f) is None for f in fs) and any(nae_brute(f) for f in fs)


def test_wire_parity():
    # a wire inverts exactly when both ends run the same way along their sides
    assert not wire_parity(Side.RIGHT, Side.LEFT)
    assert not wire_parity(Side.TOP, Side.BOTTOM)
    assert not wire_parity(Side.RIGHT, Side.BOTTOM)
    assert wire_parity(Side.RIGHT, Side.TOP)
    assert wire_parity(Side.BOTTOM, Side.LEFT)


@given(formulas)
def test_orthogonal_layout(clauses):
    phi = Nae3SatFormula.of(*clauses)
    lay = layout_formula(phi)
    for line in lay.polylines:
        for (x0, y0), (x1, y1) in zip(line, line[1:]):
            assert x0 == x1 or y0 == y1
    assert len(lay.polylines) == 3 * len(phi.clauses)
    assert len(find_crossings(lay.polylines)) == len(lay.crossings)
    for c in lay.crossings:
        assert c.vertical != c.horizontal


@pytest.mark.parametrize("clauses", [["x y z", "-x w y"], ["a b c", "a -b d"], ["x x y"]])
def test_witnesses_of_satisfying_assignments_embed(clauses):
    phi = Nae3SatFormula.of(*clauses)
    r = reduce_fixed(phi)
    assert validate(r.graph) == []
    assert r.graph.max_cluster_size <= 3
    for vals in product((False, True), repeat=len(phi.variables)):
        a = dict(zip(phi.variables, vals))
        if not phi.satisfied_by(a):
            continue
        p = witness_permutations(r, a)
        assert wheel_embedding(r.graph, p) is not None
        for v in phi.variables:
            assert all(variable_value(r, p, c) == a[v] for c in r.gadgets.chains[v])


@pytest.mark.parametrize("clauses", [["x y z", "-x -y w", "x -z -w", "y z w"], ["a b c", "-a -b -c", "a -b c", "-a b -c"]])
def test_free_reduction_structure(clauses):
    fr = reduce_free(Nae3SatFormula.of(*clauses))
    f = cluster_frame(fr.graph)
    assert fr.graph.sides is None
    assert {len(vs) for vs in fr.graph.clusters.values()} == {5}
    assert is_triconnected(f) and nx.check_planarity(f)[0]
    assert all(is_rim_wheel(f, hub, rim) and len(rim) == 8 for hub, rim in fr.wheels.values())
