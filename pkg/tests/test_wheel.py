from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from nodetrix.model import Side
from nodetrix.wheel import (
    Arc,
    VertexLabel,
    arc_from_positions,
    arc_intersection,
    arc_union,
    build_wheel,
    complete_sequences,
    copy_at,
    cyclically_sorted,
    internal_arcs,
    label_positions,
    position,
)


@given(st.integers(2, 6))
def test_positions_biject(k):
    seen = {position(j, s, k) for j in range(k) for s in Side}
    assert seen == set(range(4 * k))
    for p in range(4 * k):
        j, s = copy_at(p, k)
        assert position(j, s, k) == p


def test_wheel_cycle_order():
    w = build_wheel("C", ("x", "y", "z"))
    # T and R follow the permutation clockwise, B and L run backwards
    assert [c.split("/", 1)[1] for c in w.cycle] == [
        "x/T", "y/T", "z/T", "x/R", "y/R", "z/R", "z/B", "y/B", "x/B", "z/L", "y/L", "x/L"
    ]
    assert len(w.spokes) == 12 and len(w.edges) == 24
    assert w.position_of(w.cycle[5]) == 5


@given(st.integers(3, 12), st.data())
def test_arc_runs(n, data):
    first = data.draw(st.integers(0, n - 1))
    size = data.draw(st.integers(1, n))
    a = Arc(first, size, n)
    assert len(a.positions()) == size
    assert arc_from_positions(a.positions(), n).positions() == a.positions()
    assert all(p in a for p in a.positions())
    comp = a.complement()
    assert a.first in comp and a.last in comp
    assert set(a.positions()) | set(comp.positions()) == set(range(n))


@given(st.integers(3, 10), st.data())
def test_union_and_intersection(n, data):
    a = Arc(data.draw(st.integers(0, n - 1)), data.draw(st.integers(1, n - 1)), n)
    b = Arc(data.draw(st.integers(0, n - 1)), data.draw(st.integers(1, n - 1)), n)
    u = arc_union(a, b)
    if u is not None:
        assert set(u.positions()) == set(a.positions()) | set(b.positions())
    i = arc_intersection(a, b)
    common = set(a.positions()) & set(b.positions())
    if i is not None:
        assert set(i.positions()) == common
    assert arc_union(Arc.empty_arc(n), a) == a


def test_labels():
    labs = label_positions(6, [0, 2], [2, 4])
    assert labs == [
        VertexLabel.INT, VertexLabel.VOID, VertexLabel.INT_EXT, VertexLabel.VOID, VertexLabel.EXT, VertexLabel.VOID
    ]


@given(st.integers(4, 12), st.data())
def test_internal_arcs_cover_intra(n, data):
    intra = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    extra = data.draw(st.sets(st.integers(0, n - 1)))
    for a in internal_arcs(n, intra, extra):
        assert intra <= set(a.positions())
        assert not any(a.strictly_inside(p) for p in extra)
    if extra - intra and len(intra) > 1:
        assert len(internal_arcs(n, intra, extra)) <= 2


def test_complete_sequences_split_cycle():
    labs = label_positions(8, [0, 1], [4, 5])
    internal, external = complete_sequences(labs)
    assert [c.arc.positions() for c in internal] == [[0, 1]]
    assert external and all(4 in c.arc and 5 in c.arc for c in external)


def test_cyclically_sorted():
    assert cyclically_sorted([1, 3, 5], 6)
    assert cyclically_sorted([5, 1, 3], 6)
    assert not cyclically_sorted([5, 3, 1], 6)
