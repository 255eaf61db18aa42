"""Planarity under embedding constraints, by reduction to plain planarity
plus a 2SAT instance over the orientations of rigid components.

Every ordered constraint node becomes a wheel whose rim lists its parent
slot (unless it is a root) followed by one slot per child, so the rim order
is the clockwise order of the children.  Grouping nodes become plain
vertices.  The resulting graph H is planar iff the grouping and mirror
constraints can be met; each wheel is rigid, so it sits inside one R-node
of its block's SPQR tree, and the only freedom left for its orientation is
the mirror choice of that R-node (or of the block).  Fixed orientations and
color synchronisation then read as unit and equivalence clauses.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .constraints import GC, MC, OC, SMC, CNode, Constraints, Leaf, check_rotation, is_vacuous, normalize
from .decomposition.bctree import biconnected_components
from .decomposition.compose import Rotation, compose, other, skeleton_rotation
from .decomposition.embedding import CombinatorialEmbedding, is_planar_rotation
from .decomposition.spqr import SpqrTree, spqr_decompose
from .model import Edge, edge
from .twosat import TwoSatFormula, solve

HV = Hashable

NON_PLANAR_AUX = "NonPlanarAux"
UNSATISFIABLE = "UnsatisfiableOrientation"


@dataclass
class GadgetWheel:
    owner: str
    node: CNode
    hub: HV
    cycle: List[HV]
    spokes: List[int]  # H edge id of hub - cycle[i]
    rim: List[int]  # H edge id of cycle[i] - cycle[i + 1]
    # the wheel already exists in the input graph: no gadget was added
    native: bool = False


@dataclass
class AuxGraph:
    vertices: List[HV]
    ends: List[Tuple[HV, HV]]  # H edges by id
    real: Dict[int, Edge]  # H edge id -> edge of the input graph
    owner: Dict[HV, str]
    wheels: List[GadgetWheel]

    def add_vertex(self, x: HV, v: str) -> HV:
        self.vertices.append(x)
        self.owner[x] = v
        return x

    def add_edge(self, a: HV, b: HV, real: Optional[Edge] = None) -> int:
        self.ends.append((a, b))
        if real is not None:
            self.real[len(self.ends) - 1] = real
        return len(self.ends) - 1


def _plain(t: CNode) -> bool:
    return t.kind == GC and all(isinstance(c, Leaf) for c in t.children)


def native_wheels(vertices: Sequence[str], edges: Sequence[Edge], trees: Constraints) -> Dict[str, List[str]]:
    """Vertices whose constraint is a single ordered node over all their edges
    while their neighbours, in that order, already form an unconstrained cycle.
    Such a vertex is the hub of a wheel of the input graph, so it needs no gadget."""
    eset = set(edges)
    out = {}
    for v in vertices:
        t = trees[v]
        if t.kind not in (OC, MC, SMC) or is_vacuous(t, True):
            continue
        if not all(isinstance(c, Leaf) for c in t.children):
            continue
        ring = [other(c.edge, v) for c in t.children]
        if any(not _plain(trees[u]) for u in ring):
            continue
        if all(edge(ring[i], ring[(i + 1) % len(ring)]) in eset for i in range(len(ring))):
            out[v] = ring
    return out


def build_aux_graph(vertices: Sequence[str], edges: Sequence[Edge], trees: Constraints) -> AuxGraph:
    aux = AuxGraph([], [], {}, {}, [])
    attach: Dict[Tuple[str, Edge], HV] = {}
    native = native_wheels(vertices, edges, trees)

    def build(v: str, node: CNode, path: Tuple[int, ...], up: Optional[HV]) -> None:
        root = not path
        if node.kind not in (OC, MC, SMC) or is_vacuous(node, root) or (root and v in native):
            x = aux.add_vertex(v if root else ("g", v, path), v)
            if up is not None:
                aux.add_edge(up, x)
            for i, ch in enumerate(node.children):
                if isinstance(ch, Leaf):
                    attach[(v, ch.edge)] = x
                else:
                    build(v, ch, path + (i,), x)
            return
        hub = aux.add_vertex(("h", v, path), v)
        k = len(node.children) + (0 if root else 1)
        cycle = [aux.add_vertex(("s", v, path, j), v) for j in range(k)]
        spokes = [aux.add_edge(hub, c) for c in cycle]
        rim = [aux.add_edge(cycle[j], cycle[(j + 1) % k]) for j in range(k)]
        aux.wheels.append(GadgetWheel(v, node, hub, cycle, spokes, rim))
        if up is not None:
            aux.add_edge(up, cycle[0])
        off = 0 if root else 1
        for i, ch in enumerate(node.children):
            if isinstance(ch, Leaf):
                attach[(v, ch.edge)] = cycle[off + i]
            else:
                build(v, ch, path + (i,), cycle[off + i])

    for v in vertices:
        build(v, trees[v], (), None)
    eid: Dict[Edge, int] = {}
    for u, v in edges:
        e = edge(u, v)
        eid[e] = aux.add_edge(attach[(u, e)], attach[(v, e)], real=e)
    for v, ring in native.items():
        k = len(ring)
        spokes = [eid[edge(v, u)] for u in ring]
        rim = [eid[edge(ring[j], ring[(j + 1) % k])] for j in range(k)]
        aux.wheels.append(GadgetWheel(v, trees[v], v, list(ring), spokes, rim, native=True))
    return aux


@dataclass
class ConstrainedResult:
    accepted: bool
    reason: Optional[str] = None
    embedding: Optional[CombinatorialEmbedding] = None
    aux: Optional[AuxGraph] = None
    formula: Optional[TwoSatFormula] = None
    assignment: Optional[Dict[Hashable, bool]] = None
    stats: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.accepted


def _clockwise(around_hub: Sequence[HV], cycle: Sequence[HV]) -> bool:
    i = list(around_hub).index(cycle[0])
    return around_hub[(i + 1) % len(around_hub)] == cycle[1]


class _Block:
    def __init__(self, eids: List[int], aux: AuxGraph):
        self.eids = eids
        self.local = {e: i for i, e in enumerate(eids)}
        self.aux = aux
        self._tree: Optional[SpqrTree] = None
        self.ref: Dict[int, Rotation] = {}

    @property
    def tree(self) -> SpqrTree:
        if self._tree is None:
            ends = [self.aux.ends[e] for e in self.eids]
            deg: Dict[HV, int] = defaultdict(int)
            for a, b in ends:
                deg[a] += 1
                deg[b] += 1
            # hubs, and rim vertices with no edge leaving their wheel, lie in
            # no separation pair
            rigid = set()
            for w in self.aux.wheels:
                if w.spokes[0] in self.local:
                    rigid.add(w.hub)
                    rigid.update(c for c in w.cycle if deg[c] == 3)
            self._tree = spqr_decompose(ends, never_split=rigid)
        return self._tree

    def reference(self, i: int) -> Rotation:
        if i not in self.ref:
            self.ref[i] = skeleton_rotation(self.tree.nodes[i])
        return self.ref[i]


def test_constrained(
    vertices: Sequence[str],
    edges: Sequence[Edge],
    trees: Constraints,
    embed: bool = True,
) -> ConstrainedResult:
    """Decide whether the graph has a planar embedding meeting ``trees``.

    With ``embed`` the accepted result carries a witness rotation system;
    without it, SPQR trees are only built when mirroring whole blocks does
    not already satisfy the constraints.
    """
    vertices = list(vertices)
    edges = [edge(*e) for e in edges]
    trees = normalize(vertices, edges, trees)
    aux = build_aux_graph(vertices, edges, trees)
    stats = {"aux_vertices": len(aux.vertices), "aux_edges": len(aux.ends), "wheels": len(aux.wheels)}

    h = nx.Graph()
    h.add_nodes_from(aux.vertices)
    h.add_edges_from(aux.ends)
    planar, raw = nx.check_planarity(h)
    if not planar:
        return ConstrainedResult(False, NON_PLANAR_AUX, aux=aux, stats=stats)

    eid_of = {frozenset(e): i for i, e in enumerate(aux.ends)}
    block_edges, _ = biconnected_components(aux.vertices, aux.ends)
    blocks = [_Block([eid_of[frozenset(e)] for e in b], aux) for b in block_edges]
    block_of = {e: bi for bi, b in enumerate(blocks) for e in b.eids}
    wheels_in: Dict[int, List[int]] = defaultdict(list)
    for wi, w in enumerate(aux.wheels):
        wheels_in[block_of[w.spokes[0]]].append(wi)

    if not embed:
        # one mirror variable per block first: if that restricted formula is
        # satisfiable so is the full one; otherwise refine to rigid components
        cw = {wi: _clockwise(list(raw.neighbors_cw_order(w.hub)), w.cycle) for wi, w in enumerate(aux.wheels)}
        coarse = {wi: ("b", block_of[w.spokes[0]]) for wi, w in enumerate(aux.wheels)}
        f = _clauses(aux, coarse, cw)
        if solve(f) is not None:
            stats.update(variables=len(f.variables), clauses=len(f.clauses), spqr_blocks=0)
            return ConstrainedResult(True, aux=aux, formula=f, stats=stats)
        var = {}
        for bi, wis in wheels_in.items():
            for wi in wis:
                var[wi] = coarse[wi] if len(wis) == 1 else ("r", bi, _rigid_node(blocks[bi], aux.wheels[wi]))
    else:
        var, cw = {}, {}
        for bi, wis in sorted(wheels_in.items()):
            b = blocks[bi]
            for wi in wis:
                w = aux.wheels[wi]
                ni = _rigid_node(b, w)
                node = b.tree.nodes[ni]
                around = [other(node.edges[e], w.hub) for e in b.reference(ni)[w.hub]]
                var[wi] = ("r", bi, ni)
                cw[wi] = _clockwise(around, w.cycle)
    stats["spqr_blocks"] = sum(1 for b in blocks if b._tree is not None)
    f = _clauses(aux, var, cw)
    stats["variables"] = len(f.variables)
    stats["clauses"] = len(f.clauses)
    assignment = solve(f)
    if assignment is None:
        return ConstrainedResult(False, UNSATISFIABLE, aux=aux, formula=f, stats=stats)
    if not embed:
        return ConstrainedResult(True, aux=aux, formula=f, assignment=assignment, stats=stats)
    r_node = {wi: x[2] for wi, x in var.items()}
    result = ConstrainedResult(True, aux=aux, formula=f, assignment=assignment, stats=stats)

    flips: Dict[Tuple[int, int], bool] = {}
    for wi, x in var.items():
        flips[(x[1], x[2])] = not assignment[x]
    h_rot = _glue(aux, [_embed_block(bi, b, aux, flips, wheels_in.get(bi, []), r_node) for bi, b in enumerate(blocks)])
    rotation = _contract(aux, h_rot, vertices)
    if not is_planar_rotation(rotation) or check_rotation(rotation, trees):
        raise AssertionError("re-embedded witness violates planarity or the constraints")
    result.embedding = CombinatorialEmbedding(rotation)
    return result


def _rigid_node(b: _Block, w: GadgetWheel) -> int:
    ni = b.tree.node_of_edge(b.local[w.spokes[0]])
    if b.tree.nodes[ni].kind != "R":
        raise AssertionError("a gadget wheel must lie in a rigid component")
    return ni


def _clauses(aux: AuxGraph, var: Dict[int, Tuple], cw: Dict[int, bool]) -> TwoSatFormula:
    """Unit clauses for oriented wheels, and for each color an equality or
    inequality between every wheel and the color's first wheel."""
    f = TwoSatFormula()
    for wi in sorted(var):
        f.declare(var[wi])
    reps: Dict[int, int] = {}
    for wi, w in enumerate(aux.wheels):
        if w.node.kind == OC:
            f.unit(var[wi], cw[wi])
        elif w.node.kind == SMC:
            r = reps.setdefault(w.node.color, wi)
            if r != wi:
                (f.equal if cw[wi] == cw[r] else f.differ)(var[wi], var[r])
    return f


def _embed_block(
    bi: int,
    b: _Block,
    aux: AuxGraph,
    flips: Dict[Tuple[int, int], bool],
    wheel_ids: List[int],
    r_node: Dict[int, int],
) -> Dict[HV, List[int]]:
    if len(b.eids) == 1:
        e = b.eids[0]
        u, v = aux.ends[e]
        return {u: [e], v: [e]}
    tree = b.tree
    rim_at: Dict[int, Tuple[int, int]] = {}  # local rim edge id -> (wheel, rim index)
    for wi in wheel_ids:
        if aux.wheels[wi].native:
            continue
        for j, e in enumerate(aux.wheels[wi].rim):
            rim_at[b.local[e]] = (wi, j)

    def rigid(i: int) -> Rotation:
        rot = b.reference(i)
        if flips.get((bi, i), False):
            rot = {x: list(reversed(r)) for x, r in rot.items()}
        return rot

    def skeleton(i: int) -> Rotation:
        node = tree.nodes[i]
        if node.kind == "R":
            return rigid(i)
        if node.kind == "P":
            for ce in node.real:
                if ce not in rim_at:
                    continue
                # keep the rim edge next to the wheel so its triangles stay empty
                wi, j = rim_at[ce]
                w = aux.wheels[wi]
                ri = r_node[wi]
                vid = next(x for x, y in tree.neighbours(i) if y == ri)
                c = w.cycle[j]
                around = rigid(ri)[c]
                k = around.index(vid)
                spoke = b.local[w.spokes[j]]
                before = around[k - 1] == spoke
                if not before and around[(k + 1) % len(around)] != spoke:
                    raise AssertionError("wheel triangle is not a face of its rigid skeleton")
                rest = sorted(e for e in node.edges if e not in (vid, ce))
                order = [vid, ce, *rest] if before else [vid, *rest, ce]
                return skeleton_rotation(node, bond_order=order, pole=c)
        return skeleton_rotation(node)

    local = compose(tree, skeleton)
    return {x: [b.eids[e] for e in r] for x, r in local.items()}


def _glue(aux: AuxGraph, block_rots: List[Dict[HV, List[int]]]) -> Dict[HV, List[int]]:
    """One rotation for H; blocks meeting at a wheel rim vertex go into a gap
    outside the wheel."""
    parts: Dict[HV, List[List[int]]] = defaultdict(list)
    for rot in block_rots:
        for x, r in rot.items():
            parts[x].append(r)
    spoke_at = {c: s for w in aux.wheels if not w.native for c, s in zip(w.cycle, w.spokes)}
    out: Dict[HV, List[int]] = {}
    for x in aux.vertices:
        ps = parts.get(x, [])
        if len(ps) <= 1:
            out[x] = list(ps[0]) if ps else []
            continue
        if x in spoke_at:
            s = spoke_at[x]
            base = next(p for p in ps if s in p)
            rest = [e for p in ps if p is not base for e in p]
            k = base.index(s)
            base = base[k:] + base[:k]
            out[x] = base[:2] + rest + base[2:]
        else:
            out[x] = [e for p in ps for e in p]
    return out


def _contract(aux: AuxGraph, h_rot: Dict[HV, List[int]], vertices: Sequence[str]) -> Dict[str, List[str]]:
    """Contract every gadget back to its vertex: splice rotations along a
    spanning tree of the gadget, then drop the leftover loops."""
    members: Dict[str, List[HV]] = defaultdict(list)
    for x in aux.vertices:
        members[aux.owner[x]].append(x)
    inner: Dict[HV, List[Tuple[int, HV]]] = defaultdict(list)
    for i, (a, b) in enumerate(aux.ends):
        if i not in aux.real:
            inner[a].append((i, b))
            inner[b].append((i, a))
    out: Dict[str, List[str]] = {}
    for v in vertices:
        root = members[v][0]
        rot = list(h_rot[root])
        seen = {root}
        queue = [root]
        while queue:
            a = queue.pop(0)
            for eid, b in inner[a]:
                if b in seen:
                    continue
                seen.add(b)
                queue.append(b)
                rb = h_rot[b]
                k = rb.index(eid)
                j = rot.index(eid)
                rot = rot[:j] + rb[k + 1:] + rb[:k] + rot[j + 1:]
        out[v] = [other(aux.real[e], v) for e in rot if e in aux.real]
    return out


__all__ = [
    "AuxGraph",
    "ConstrainedResult",
    "GadgetWheel",
    "NON_PLANAR_AUX",
    "UNSATISFIABLE",
    "build_aux_graph",
    "test_constrained",
]

test_constrained.__test__ = False  # keep pytest from collecting the import
