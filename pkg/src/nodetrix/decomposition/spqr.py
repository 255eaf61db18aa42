"""SPQR trees by recursive splitting at separation pairs.

Separation pairs are found as articulation points of ``C - a`` for each
vertex ``a``; a vertex that lies in no separation pair of a component lies
in none of the split components either, so it is never tried again.  The
split components are then merged (bond with bond, polygon with polygon)
into the triconnected components.  Quadratic in the worst case.

Real edges are identified by their index in the input edge list; virtual
edges get fresh ids and appear in exactly two skeletons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

V = Hashable
E = Tuple[V, V]


@dataclass(eq=False)
class SpqrNode:
    kind: str  # "S" (polygon), "P" (bond) or "R" (rigid)
    edges: Dict[int, E]  # skeleton edges by id
    virtual: Set[int] = field(default_factory=set)

    @property
    def vertices(self) -> Set[V]:
        return {x for e in self.edges.values() for x in e}

    @property
    def real(self) -> List[int]:
        return [i for i in self.edges if i not in self.virtual]


@dataclass
class SpqrTree:
    nodes: List[SpqrNode]
    real_edges: List[E]
    # virtual edge id -> the two node indices sharing it
    links: Dict[int, Tuple[int, int]]
    root: int = 0

    def node_of_edge(self, eid: int) -> int:
        for i, n in enumerate(self.nodes):
            if eid in n.edges and eid not in n.virtual:
                return i
        raise KeyError(eid)

    def neighbours(self, i: int) -> List[Tuple[int, int]]:
        """(virtual id, adjacent node) pairs of node ``i``."""
        out = []
        for vid in self.nodes[i].virtual:
            a, b = self.links[vid]
            out.append((vid, b if a == i else a))
        return out

    def rooted(self, root: Optional[int] = None) -> Tuple[List[int], Dict[int, Tuple[int, int]]]:
        """Pre-order node list and parent map node -> (parent, virtual id)."""
        root = self.root if root is None else root
        order = [root]
        parent: Dict[int, Tuple[int, int]] = {}
        seen = {root}
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for vid, y in sorted(self.neighbours(x)):
                if y not in seen:
                    seen.add(y)
                    parent[y] = (x, vid)
                    order.append(y)
        return order, parent

    def count(self, kind: str) -> int:
        return sum(1 for n in self.nodes if n.kind == kind)


def _articulation_points(adj: Dict[V, List[V]], removed: V) -> List[V]:
    verts = [v for v in adj if v != removed]
    if not verts:
        return []
    root = verts[0]
    index = {root: 0}
    low = {root: 0}
    counter = 1
    cuts = []
    root_kids = 0
    stack = [(root, None, iter(adj[root]))]
    while stack:
        v, par, it = stack[-1]
        pushed = False
        for w in it:
            if w == removed:
                continue
            if w not in index:
                index[w] = low[w] = counter
                counter += 1
                stack.append((w, v, iter(adj[w])))
                pushed = True
                break
            if w != par:
                if index[w] < low[v]:
                    low[v] = index[w]
        if pushed:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if u == root:
                root_kids += 1
            elif low[v] >= index[u]:
                cuts.append(u)
    if root_kids > 1:
        cuts.append(root)
    return cuts


def _find_split(comp: Dict[int, E], skip: Set[V]) -> Optional[Tuple[V, V, Set[int]]]:
    adj: Dict[V, List[V]] = {}
    for u, v in comp.values():
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if len(comp) > 3:
        # a vertex of degree two always splits off its two edges
        for x, nb in adj.items():
            if len(nb) == 2 and nb[0] != nb[1]:
                part = {i for i, (u, v) in comp.items() if x in (u, v)}
                return nb[0], nb[1], part
    for a in sorted(adj, key=repr):
        if a in skip:
            continue
        cuts = _articulation_points(adj, a)
        if not cuts:
            skip.add(a)
            continue
        b = cuts[0]
        # one connected piece of C - {a, b}, with its attachments
        start = next(w for w in adj if w not in (a, b))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and y != a and y != b:
                    seen.add(y)
                    stack.append(y)
        part = {i for i, (u, v) in comp.items() if u in seen or v in seen}
        return a, b, part
    return None


class _Builder:
    def __init__(self, m: int):
        self.next_id = m
        self.virtual: Set[int] = set()

    def fresh(self) -> int:
        vid = self.next_id
        self.next_id += 1
        self.virtual.add(vid)
        return vid


def _split_multi(comp: Dict[int, E], builder: _Builder, out: List[Dict[int, E]]) -> None:
    """Replace each bundle of parallel edges by a bond component."""
    groups: Dict[FrozenSet[V], List[int]] = {}
    for i, (u, v) in comp.items():
        groups.setdefault(frozenset((u, v)), []).append(i)
    for ids in groups.values():
        if len(ids) < 2 or len(ids) == len(comp):
            continue
        vid = builder.fresh()
        u, v = comp[ids[0]]
        out.append({**{i: comp[i] for i in ids}, vid: (u, v)})
        for i in ids:
            del comp[i]
        comp[vid] = (u, v)


def _classify(comp: Dict[int, E]) -> str:
    verts = {x for e in comp.values() for x in e}
    if len(verts) == 2:
        return "P"
    deg: Dict[V, int] = {}
    for u, v in comp.values():
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def spqr_decompose(
    edges: Iterable[E], root_edge: Optional[E] = None, never_split: Iterable[V] = ()
) -> SpqrTree:
    """SPQR tree of a biconnected (multi)graph given as an edge list.

    ``never_split`` may name vertices known to lie in no separation pair;
    they are not tried as split candidates.
    """
    edges = list(edges)
    builder = _Builder(len(edges))
    comp0 = dict(enumerate(edges))
    done: List[Dict[int, E]] = []
    pending: List[Tuple[Dict[int, E], Set[V]]] = []
    if len(edges) <= 1:
        done.append(comp0)
    else:
        _split_multi(comp0, builder, done)
        pending.append((comp0, set(never_split)))
    while pending:
        comp, skip = pending.pop()
        if len(comp) <= 3:
            done.append(comp)
            continue
        found = _find_split(comp, skip)
        if found is None:
            done.append(comp)
            continue
        a, b, part = found
        vid = builder.fresh()
        one = {i: comp[i] for i in part}
        one[vid] = (a, b)
        two = {i: e for i, e in comp.items() if i not in part}
        two[vid] = (a, b)
        for c in (one, two):
            _split_multi(c, builder, done)
            pending.append((c, set(skip)))

    kinds = [_classify(c) for c in done]
    nodes = _merge(done, kinds, builder.virtual)
    links: Dict[int, List[int]] = {}
    for idx, n in enumerate(nodes):
        for vid in n.virtual:
            links.setdefault(vid, []).append(idx)
    tree = SpqrTree(nodes, edges, {vid: (p[0], p[1]) for vid, p in links.items()})
    if root_edge is not None:
        rid = next(i for i, e in enumerate(edges) if set(e) == set(root_edge))
        tree.root = tree.node_of_edge(rid)
    return tree


def _merge(comps: List[Dict[int, E]], kinds: List[str], virtual: Set[int]) -> List[SpqrNode]:
    owner: Dict[int, List[int]] = {}
    for idx, c in enumerate(comps):
        for i in c:
            if i in virtual:
                owner.setdefault(i, []).append(idx)
    parent = list(range(len(comps)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    dropped: Set[int] = set()
    for vid, (a, b) in owner.items():
        if kinds[a] == kinds[b] and kinds[a] in "PS":
            parent[find(a)] = find(b)
            dropped.add(vid)
    groups: Dict[int, Dict[int, E]] = {}
    group_kind: Dict[int, str] = {}
    for idx, c in enumerate(comps):
        g = groups.setdefault(find(idx), {})
        group_kind[find(idx)] = kinds[idx]
        for i, e in c.items():
            if i not in dropped:
                g[i] = e
    nodes = []
    for root in sorted(groups):
        g = groups[root]
        nodes.append(SpqrNode(group_kind[root], g, {i for i in g if i in virtual}))
    return nodes
