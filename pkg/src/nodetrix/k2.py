"""Fixed-sides NodeTrix planarity for clusters of size at most two.

A size-2 cluster {v', v''} becomes a 13-vertex tree: a center joined to
one vertex per side, each carrying a leaf for v' and one for v''.  The
center fixes the clockwise side order T, R, B, L, and the four side
vertices share a synchronized mirror color, so the leaves of every side
flip together, which is exactly the choice between the two column orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .constrained import test_constrained
from .constraints import CNode, Leaf, oc, smc
from .model import ClusteredGraph, Edge, PermutationAssignment, Side, edge
from .oracle import wheel_embedding
from .verdict import Verdict


class ClusterTooLarge(ValueError):
    pass


def center_name(cluster: str) -> str:
    return f"{cluster}/C"


def side_name(cluster: str, side: Side) -> str:
    return f"{cluster}/{Side(side).letter}"


def leaf_name(cluster: str, v: str, side: Side) -> str:
    return f"{cluster}/{v}/{Side(side).letter}"


@dataclass(frozen=True)
class ChiGadget:
    cluster: str
    first: str  # v'
    second: str  # v''
    color: int
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    constraints: Dict[str, CNode]
    routing: Dict[Edge, str]  # inter-cluster edge -> gadget leaf

    @property
    def center(self) -> str:
        return center_name(self.cluster)


def build_chi(g: ClusteredGraph, cluster: str, color: int) -> ChiGadget:
    members = g.clusters[cluster]
    if len(members) != 2:
        raise ClusterTooLarge(f"cluster {cluster!r} has {len(members)} vertices, the gadget needs 2")
    v1, v2 = members
    center = center_name(cluster)
    vertices = [center]
    edges: List[Edge] = []
    constraints: Dict[str, CNode] = {}
    for s in Side:
        x = side_name(cluster, s)
        a, b = leaf_name(cluster, v1, s), leaf_name(cluster, v2, s)
        vertices += [x, a, b]
        edges += [edge(center, x), edge(x, a), edge(x, b)]
        # clockwise from the center: v' before v'' on T and R, after it on B and L
        order = (a, b) if s in (Side.TOP, Side.RIGHT) else (b, a)
        constraints[x] = smc(color, Leaf(x, center), *(Leaf(x, y) for y in order))
    constraints[center] = oc(*(Leaf(center, side_name(cluster, s)) for s in Side))
    routing = {}
    for e in g.inter_edges:
        for v in e:
            if v in (v1, v2):
                routing[e] = leaf_name(cluster, v, g.side(e, cluster))
    return ChiGadget(cluster, v1, v2, color, tuple(vertices), tuple(edges), constraints, routing)


def chi_instance(g: ClusteredGraph) -> Tuple[List[str], List[Edge], Dict[str, CNode], Dict[str, ChiGadget]]:
    """The constrained graph G' replacing every size-2 cluster by its gadget."""
    if g.sides is None:
        raise ValueError("the k=2 tester needs a side assignment")
    vertices: List[str] = []
    edges: List[Edge] = []
    trees: Dict[str, CNode] = {}
    gadgets: Dict[str, ChiGadget] = {}
    for i, c in enumerate(g.nontrivial_clusters):
        chi = build_chi(g, c, i)
        gadgets[c] = chi
        vertices += chi.vertices
        edges += chi.edges
        trees.update(chi.constraints)
    for c, members in g.clusters.items():
        if len(members) == 1:
            vertices.append(members[0])
    for e in g.inter_edges:
        ends = [v for v in e]
        for j, v in enumerate(e):
            c = g.cluster_of(v)
            if c in gadgets:
                ends[j] = gadgets[c].routing[e]
        edges.append(edge(*ends))
    return vertices, edges, trees, gadgets


def read_permutation(chi: ChiGadget, rotation: Dict[str, List[str]], side: Side = Side.TOP) -> Tuple[str, str]:
    """Column order encoded by the rotation at one side vertex."""
    x = side_name(chi.cluster, side)
    a, b = leaf_name(chi.cluster, chi.first, side), leaf_name(chi.cluster, chi.second, side)
    rot = rotation[x]
    i = rot.index(chi.center)
    after = rot[(i + 1) % 3]
    forward = after == a if side in (Side.TOP, Side.RIGHT) else after == b
    return (chi.first, chi.second) if forward else (chi.second, chi.first)


def test_k2(g: ClusteredGraph) -> Verdict:
    if g.max_cluster_size > 2:
        raise ClusterTooLarge(f"largest cluster has {g.max_cluster_size} vertices")
    vertices, edges, trees, gadgets = chi_instance(g)
    r = test_constrained(vertices, edges, trees, embed=True)
    stats = dict(r.stats)
    if not r.accepted:
        return Verdict(False, algorithm="k2", detail=r.reason or "", stats=stats)
    rotation = r.embedding.rotation
    perms: PermutationAssignment = {}
    for c, chi in gadgets.items():
        reads = {read_permutation(chi, rotation, s) for s in Side}
        if len(reads) != 1:
            raise AssertionError(f"side vertices of {c!r} disagree on the column order")
        perms[c] = reads.pop()
    emb = wheel_embedding(g, perms)
    if emb is None:
        raise AssertionError("decoded permutations do not embed the wheel reduction")
    return Verdict(True, perms, g.sides, emb, "k2", stats=stats)


test_k2.__test__ = False
