from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodetrix.decomposition import (
    Disconnected,
    NonPlanar,
    NotSeriesParallel,
    block_cut_tree,
    is_partial_2_tree,
    planar_embed,
    spq_decompose,
    spqr_decompose,
)
from nodetrix.decomposition.compose import compose, is_planar_dart_rotation, skeleton_rotation


def edges_of(g: nx.Graph):
    return [tuple(e) for e in g.edges()]


# -- planarity -------------------------------------------------------------


def test_k4_embedding_has_four_faces():
    emb = planar_embed(range(4), edges_of(nx.complete_graph(4)))
    assert len(emb.faces) == 4
    assert emb.euler_ok()


@pytest.mark.parametrize("g", [nx.complete_graph(5), nx.complete_bipartite_graph(3, 3)])
def test_kuratowski_graphs_rejected(g):
    with pytest.raises(NonPlanar) as err:
        planar_embed(g.nodes, edges_of(g))
    assert err.value.witness_edges


def test_mirror_is_planar_too():
    emb = planar_embed(range(6), edges_of(nx.wheel_graph(6)))
    assert emb.mirrored().euler_ok()


@st.composite
def planar_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n) if pairs else st.just([]))
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for e in chosen:
        g.add_edge(*e)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(*e)
    return g


@given(planar_graphs())
@settings(max_examples=60, deadline=None)
def test_euler_holds_per_component(g):
    emb = planar_embed(g.nodes, edges_of(g))
    assert emb.euler_ok()
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        faces = {i for i, f in enumerate(emb.faces) for d in f if d[0] in comp}
        if sub.number_of_edges():
            assert len(comp) - sub.number_of_edges() + len(faces) == 2


@given(planar_graphs(max_n=8), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_k5_plus_extra_edge_is_nonplanar(g, seed):
    h = nx.disjoint_union(nx.complete_graph(5), g)
    rng = random.Random(seed)
    h.add_edge(rng.randrange(5), 5 + rng.randrange(g.number_of_nodes()))
    with pytest.raises(NonPlanar):
        planar_embed(h.nodes, edges_of(h))


# -- block-cut trees --------------------------------------------------------


def test_tree_blocks_are_edges():
    t = nx.balanced_tree(2, 3)
    bct = block_cut_tree(t.nodes, edges_of(t))
    assert len(bct.blocks) == t.number_of_edges()
    assert set(bct.cut_vertices) == {v for v in t if t.degree(v) > 1}


def test_biconnected_single_block():
    g = nx.cycle_graph(7)
    bct = block_cut_tree(g.nodes, edges_of(g))
    assert len(bct.blocks) == 1 and bct.cut_vertices == []


def test_bowtie():
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]
    bct = block_cut_tree(range(5), edges)
    assert len(bct.blocks) == 2 and bct.cut_vertices == [0]
    assert sorted(bct.blocks_at(0)) == [0, 1]


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        block_cut_tree(range(4), [(0, 1), (2, 3)])


@given(planar_graphs())
@settings(max_examples=60, deadline=None)
def test_blocks_partition_edges_and_tree_shape(g):
    comp = max(nx.connected_components(g), key=len)
    sub = g.subgraph(comp)
    if sub.number_of_edges() == 0:
        return
    bct = block_cut_tree(sub.nodes, edges_of(sub))
    seen = [frozenset(e) for b in bct.blocks for e in b]
    assert sorted(map(sorted, seen)) == sorted(map(sorted, (frozenset(e) for e in sub.edges())))
    assert len(set(seen)) == len(seen)
    t = nx.Graph()
    t.add_nodes_from(("b", i) for i in range(len(bct.blocks)))
    t.add_edges_from((("b", b), ("c", c)) for b, c in bct.tree_edges)
    assert nx.is_tree(t)
    assert set(bct.cut_vertices) == set(nx.articulation_points(sub))


# -- SPQ trees ---------------------------------------------------------------


def test_cycle_spq():
    tree = spq_decompose(edges_of(nx.cycle_graph(5)), (0, 1))
    kinds = [n.kind for n in tree.nodes()]
    assert tree.root.kind == "Q" and len(tree.root.children) == 1
    assert kinds.count("Q") == 5 and kinds.count("S") == 3 and "P" not in kinds


def test_theta_spq():
    # poles 0 and 1, three internally disjoint paths; rooting at the direct
    # edge leaves the other two paths as P-children under the root
    edges = [(0, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 1)]
    tree = spq_decompose(edges, (0, 1))
    (p,) = [n for n in tree.nodes() if n.kind == "P"]
    assert tree.root.children == [p] and p.poles == (0, 1)
    assert sorted(c.kind for c in p.children) == ["S", "S"]


def test_four_path_bundle_spq():
    edges = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)]
    tree = spq_decompose(edges, (0, 2))
    (p,) = [n for n in tree.nodes() if n.kind == "P"]
    assert set(p.poles) == {0, 1} and len(p.children) == 3


def test_k4_not_series_parallel():
    with pytest.raises(NotSeriesParallel):
        spq_decompose(edges_of(nx.complete_graph(4)), (0, 1))


def _restricted_growth(n):
    """Assignments of n vertices to 4 unlabeled branch sets (or to none)."""
    out = []

    def rec(i, cur, used):
        if i == n:
            if used == 4:
                out.append(list(cur))
            return
        for lab in [-1] + list(range(min(used + 1, 4))):
            cur.append(lab)
            rec(i + 1, cur, max(used, lab + 1))
            cur.pop()

    rec(0, [], 0)
    return out


def has_k4_minor(g: nx.Graph) -> bool:
    nodes = list(g.nodes)
    for labels in _restricted_growth(len(nodes)):
        sets = [[v for v, lab in zip(nodes, labels) if lab == b] for b in range(4)]
        if not all(nx.is_connected(g.subgraph(s)) for s in sets):
            continue
        where = {v: lab for v, lab in zip(nodes, labels)}
        touch = {frozenset((where[u], where[v])) for u, v in g.edges() if where[u] >= 0 and where[v] >= 0}
        if all(frozenset((a, b)) in touch for a in range(4) for b in range(a + 1, 4)):
            return True
    return False


@st.composite
def biconnected_graphs(draw, max_n=7):
    n = draw(st.integers(3, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=n))
    g = nx.Graph(chosen)
    g.add_edges_from((i, (i + 1) % n) for i in range(n))  # guarantee a Hamiltonian cycle
    return g


@given(biconnected_graphs())
@settings(max_examples=40, deadline=None)
def test_spq_iff_no_k4_minor(g):
    e = min(edges_of(g))
    try:
        tree = spq_decompose(edges_of(g), e)
        sp = True
    except NotSeriesParallel:
        sp = False
    assert sp == (not has_k4_minor(g))
    if sp:
        for node in tree.nodes():
            if node.kind == "Q":
                continue
            kids = [frozenset(map(frozenset, c.pertinent_edges())) for c in node.children]
            union = set().union(*kids)
            assert sum(len(k) for k in kids) == len(union)
            assert union == set(map(frozenset, node.pertinent_edges()))
            if node.kind == "S":
                assert len(node.children) == 2
                a, b = node.children
                assert a.poles == (node.poles[0], node.mid) and b.poles == (node.mid, node.poles[1])
            if node.kind == "P":
                assert all(c.poles == node.poles for c in node.children)


def test_partial_2_tree():
    assert is_partial_2_tree(range(5), edges_of(nx.path_graph(5)))
    assert not is_partial_2_tree(range(4), edges_of(nx.complete_graph(4)))
    assert is_partial_2_tree(range(7), edges_of(nx.cycle_graph(4)) + [(3, 4), (4, 5), (5, 3), (5, 6)])


# -- SPQR trees ---------------------------------------------------------------


def test_spqr_k4_and_wheel():
    assert [n.kind for n in spqr_decompose(edges_of(nx.complete_graph(4))).nodes] == ["R"]
    assert [n.kind for n in spqr_decompose(edges_of(nx.wheel_graph(6))).nodes] == ["R"]


def test_spqr_cycle():
    assert [n.kind for n in spqr_decompose(edges_of(nx.cycle_graph(8))).nodes] == ["S"]


@given(biconnected_graphs(max_n=10), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_spqr_structure_and_composition(g, seed):
    if not nx.check_planarity(g)[0]:
        g = nx.Graph(nx.cycle_graph(g.number_of_nodes()))
    edges = edges_of(g)
    tree = spqr_decompose(edges)
    real = sorted(i for n in tree.nodes for i in n.real)
    assert real == list(range(len(edges)))
    for a, b in tree.links.values():
        ka, kb = tree.nodes[a].kind, tree.nodes[b].kind
        assert not (ka == kb and ka in "SP")
    for n in tree.nodes:
        if n.kind == "R":
            assert nx.node_connectivity(nx.Graph(list(n.edges.values()))) >= 3
    rng = random.Random(seed)

    def rot(i):
        node = tree.nodes[i]
        order = sorted(node.edges)
        rng.shuffle(order)
        return skeleton_rotation(node, rng.random() < 0.5, order if node.kind == "P" else None)

    assert is_planar_dart_rotation(compose(tree, rot), dict(enumerate(edges)))
