"""SPQ decomposition trees of series-parallel blocks.

The tree is built bottom-up by series and parallel reductions on the block
minus its root edge.  Series reductions fuse exactly two items, so S-nodes
come out binary without a separate normalization pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Set, Tuple

from .bctree import biconnected_components, connected_components

V = Hashable
E = Tuple[V, V]


class NotSeriesParallel(ValueError):
    """The block needs a rigid component (it contains a K4 subdivision)."""


@dataclass(eq=False)
class SpqNode:
    kind: str  # "Q", "S" or "P"
    poles: Tuple[V, V]
    children: List["SpqNode"] = field(default_factory=list)
    mid: Optional[V] = None  # S-nodes: vertex shared by the two children
    edge: Optional[E] = None  # Q-nodes: the edge itself

    def postorder(self) -> Iterator["SpqNode"]:
        stack: List[Tuple[SpqNode, bool]] = [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                yield node
                continue
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))

    def pertinent_edges(self) -> List[E]:
        return [n.edge for n in self.postorder() if n.kind == "Q" and n.edge is not None]

    def pertinent_vertices(self) -> Set[V]:
        return {x for e in self.pertinent_edges() for x in e}

    @property
    def skeleton(self) -> List[E]:
        """Skeleton edges: one virtual edge per child plus, for the root, the root edge."""
        if self.kind == "Q":
            return [self.poles]
        if self.kind == "S":
            return [(self.poles[0], self.mid), (self.mid, self.poles[1]), self.poles]
        return [self.poles] * (len(self.children) + 1)


@dataclass
class SpqTree:
    root: SpqNode  # Q-node of the root edge; its single child covers the rest

    @property
    def root_edge(self) -> E:
        return self.root.edge

    def nodes(self) -> Iterator[SpqNode]:
        return self.root.postorder()


def _make_parallel(a: SpqNode, b: SpqNode) -> SpqNode:
    kids = []
    for x in (a, b):
        kids.extend(x.children if x.kind == "P" else [x])
    return SpqNode("P", a.poles, kids)


def spq_decompose(edges: Iterable[E], root_edge: E) -> SpqTree:
    """SPQ tree of a biconnected block rooted at ``root_edge``."""
    edges = list(edges)
    s, t = root_edge
    root = SpqNode("Q", (s, t), edge=root_edge)
    rest = [e for e in edges if set(e) != {s, t}]
    if len(rest) == len(edges):
        raise ValueError("root edge is not in the block")
    if not rest:
        return SpqTree(root)

    item: Dict[FrozenSet[V], SpqNode] = {}
    adj: Dict[V, Set[V]] = {}
    queue: List[V] = []

    def add(a: V, b: V, node: SpqNode) -> None:
        key = frozenset((a, b))
        if key in item:
            item[key] = _make_parallel(item[key], node)
        else:
            item[key] = node
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        queue.extend((a, b))

    for u, v in rest:
        add(u, v, SpqNode("Q", (u, v), edge=(u, v)))
    queue.extend(adj)
    while queue:
        x = queue.pop()
        if x in (s, t) or x not in adj or len(adj[x]) != 2:
            continue
        a, b = sorted(adj[x], key=repr)
        n0 = item.pop(frozenset((a, x)))
        n1 = item.pop(frozenset((x, b)))
        del adj[x]
        adj[a].discard(x)
        adj[b].discard(x)
        add(a, b, SpqNode("S", (a, b), [n0, n1], mid=x))

    if len(item) != 1 or frozenset((s, t)) not in item:
        raise NotSeriesParallel("block is not series-parallel")
    top = item[frozenset((s, t))]
    _orient(top, s, t)
    root.children = [top]
    return SpqTree(root)


def _orient(node: SpqNode, s: V, t: V) -> None:
    """Rewrite poles top-down so that every node's poles read (s, t) in its
    parent's direction and S-children chain s -> mid -> t."""
    stack = [(node, s, t)]
    while stack:
        n, a, b = stack.pop()
        n.poles = (a, b)
        if n.kind == "Q":
            continue
        if n.kind == "P":
            stack.extend((c, a, b) for c in n.children)
            continue
        c0, c1 = n.children
        if a not in c0.poles:
            c0, c1 = c1, c0
            n.children = [c0, c1]
        stack.append((c0, a, n.mid))
        stack.append((c1, n.mid, b))


def is_series_parallel_block(edges: List[E]) -> bool:
    if len(edges) <= 1:
        return True
    try:
        spq_decompose(edges, min(edges, key=repr))
    except NotSeriesParallel:
        return False
    return True


def is_partial_2_tree(vertices: Iterable[V], edges: Iterable[E]) -> bool:
    """True iff every block of every component is series-parallel."""
    for comp_v, comp_e in connected_components(vertices, edges):
        blocks, _ = biconnected_components(comp_v, comp_e)
        if not all(is_series_parallel_block(b) for b in blocks):
            return False
    return True
