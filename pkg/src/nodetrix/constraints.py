"""Embedding-constraint trees, a direct rotation checker and an exhaustive
rotation-system oracle.

Each vertex v carries a rooted ordered tree whose leaves are the edges
incident to v.  Inner nodes are

* ``OC``  the children appear in the given clockwise order,
* ``MC``  the given order or its reverse,
* ``GC``  any order (the node only groups its leaves),
* ``SMC`` like MC, but all SMC nodes sharing a color pick the same direction.

The leaves below every non-root inner node must be consecutive around v.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .decomposition.embedding import is_planar_rotation
from .model import Edge, edge
from .verdict import BudgetExceeded

OC, MC, GC, SMC = "OC", "MC", "GC", "SMC"
FWD, REV = "fwd", "rev"


class MalformedConstraint(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    edge: Edge

    def __init__(self, *e: str):
        ends = e[0] if len(e) == 1 else e
        object.__setattr__(self, "edge", edge(*ends))


@dataclass(frozen=True)
class CNode:
    kind: str
    children: Tuple[Union["CNode", Leaf], ...]
    color: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in (OC, MC, GC, SMC):
            raise MalformedConstraint(f"unknown node kind {self.kind!r}")
        if (self.kind == SMC) != (self.color is not None):
            raise MalformedConstraint("exactly the SMC nodes carry a color")
        object.__setattr__(self, "children", tuple(self.children))

    def leaves(self) -> List[Edge]:
        out = []
        for c in self.children:
            out.extend([c.edge] if isinstance(c, Leaf) else c.leaves())
        return out

    def inner_nodes(self) -> Iterator[Tuple["CNode", bool]]:
        """(node, is_root) pairs in pre-order."""
        stack = [(self, True)]
        while stack:
            n, root = stack.pop()
            yield n, root
            stack.extend((c, False) for c in reversed(n.children) if isinstance(c, CNode))


def oc(*children) -> CNode:
    return CNode(OC, children)


def mc(*children) -> CNode:
    return CNode(MC, children)


def gc(*children) -> CNode:
    return CNode(GC, children)


def smc(color: int, *children) -> CNode:
    return CNode(SMC, children, color)


Constraints = Mapping[str, CNode]


def is_vacuous(node: CNode, is_root: bool) -> bool:
    """Ordered nodes whose children admit a single arrangement up to reversal."""
    return len(node.children) <= (2 if is_root else 1)


def incident_edges(vertices: Iterable[str], edges: Iterable[Edge]) -> Dict[str, List[Edge]]:
    inc: Dict[str, List[Edge]] = {v: [] for v in vertices}
    for u, v in edges:
        e = edge(u, v)
        inc[u].append(e)
        inc[v].append(e)
    return inc


def normalize(vertices: Sequence[str], edges: Sequence[Edge], trees: Constraints) -> Dict[str, CNode]:
    """Fill in GC roots for unconstrained vertices and check leaf sets."""
    inc = incident_edges(vertices, edges)
    out = {}
    for v in vertices:
        t = trees.get(v)
        if t is None:
            t = gc(*(Leaf(e) for e in sorted(inc[v])))
        leaves = t.leaves()
        if sorted(leaves) != sorted(inc[v]) or len(set(leaves)) != len(leaves):
            raise MalformedConstraint(f"leaves at {v!r} do not match its incident edges")
        out[v] = t
    for v in trees:
        if v not in out:
            raise MalformedConstraint(f"constraint for unknown vertex {v!r}")
    return out


# -- direct checker ---------------------------------------------------------


def _child_index(node: CNode) -> Dict[Edge, int]:
    out = {}
    for i, c in enumerate(node.children):
        for e in [c.edge] if isinstance(c, Leaf) else c.leaves():
            out[e] = i
    return out


def _collapse(seq: List[int], cyclic: bool) -> List[int]:
    out = [x for i, x in enumerate(seq) if i == 0 or seq[i - 1] != x]
    if cyclic:
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
    return out


def _same_cycle(a: List[int], b: List[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    i = a.index(b[0]) if b[0] in a else -1
    return i >= 0 and a[i:] + a[:i] == b


def directions(node: CNode, is_root: bool, rot_edges: Sequence[Edge]) -> Optional[FrozenSet[str]]:
    """Directions in which ``node``'s children appear around the vertex, or
    None when its leaves are not consecutive (non-root) or a child is split."""
    m = len(node.children)
    mine = set(node.leaves())
    seq = [e for e in rot_edges if e in mine]
    if not is_root:
        n = len(rot_edges)
        inside = [e in mine for e in rot_edges]
        starts = [i for i in range(n) if inside[i] and not inside[i - 1]]
        if len(mine) < n and len(starts) != 1:
            return None
        if len(mine) < n:
            s = starts[0]
            seq = [rot_edges[(s + i) % n] for i in range(len(mine))]
    where = _child_index(node)
    order = _collapse([where[e] for e in seq], cyclic=is_root)
    if len(order) != m:
        return None
    fwd, rev = list(range(m)), list(range(m))[::-1]
    if is_root:
        dirs = {d for d, ref in ((FWD, fwd), (REV, rev)) if _same_cycle(order, ref)}
    else:
        dirs = {d for d, ref in ((FWD, fwd), (REV, rev)) if order == ref}
    if is_vacuous(node, is_root):
        dirs = {FWD, REV}
    return frozenset(dirs)


def local_status(tree: CNode, rot_edges: Sequence[Edge]) -> Optional[Dict[int, FrozenSet[str]]]:
    """Check one vertex: None on a violation, else the direction set forced on
    each SMC color appearing in its tree."""
    colors: Dict[int, FrozenSet[str]] = {}
    for node, root in tree.inner_nodes():
        dirs = directions(node, root, rot_edges)
        if dirs is None:
            return None
        if node.kind == OC and FWD not in dirs:
            return None
        if node.kind in (MC, SMC) and not dirs:
            return None
        if node.kind == SMC:
            colors[node.color] = colors.get(node.color, frozenset((FWD, REV))) & dirs
            if not colors[node.color]:
                return None
    return colors


def check_rotation(rotation: Mapping[str, Sequence[str]], trees: Constraints) -> List[str]:
    """Violations of ``trees`` by a neighbour rotation system (empty when all hold)."""
    out = []
    colors: Dict[int, FrozenSet[str]] = {}
    for v, t in trees.items():
        rot = [edge(v, u) for u in rotation.get(v, [])]
        st = local_status(t, rot)
        if st is None:
            out.append(f"constraint at {v!r} violated")
            continue
        for c, d in st.items():
            colors[c] = colors.get(c, frozenset((FWD, REV))) & d
    for c, d in sorted(colors.items()):
        if not d:
            out.append(f"smc color {c} not synchronized")
    return out


# -- exhaustive oracle ---------------------------------------------------------


def rotation_count(vertices: Sequence[str], edges: Sequence[Edge]) -> int:
    inc = incident_edges(vertices, edges)
    total = 1
    for es in inc.values():
        total *= factorial(max(len(es) - 1, 0))
    return total


def enumerate_embeddings_oracle(
    vertices: Sequence[str],
    edges: Sequence[Edge],
    trees: Constraints,
    budget: int = 10**6,
) -> Optional[Dict[str, List[str]]]:
    """Brute force over all rotation systems.  Returns a planar rotation that
    satisfies every constraint, or None."""
    vertices = list(vertices)
    edges = [edge(*e) for e in edges]
    total = rotation_count(vertices, edges)
    if total > budget:
        raise BudgetExceeded(budget, total)
    trees = normalize(vertices, edges, trees)
    inc = incident_edges(vertices, edges)
    options: List[List[Tuple[List[str], Dict[int, FrozenSet[str]]]]] = []
    for v in vertices:
        nbrs = [e[0] if e[1] == v else e[1] for e in inc[v]]
        opts = []
        cyc = [[]] if not nbrs else [[nbrs[0], *p] for p in permutations(nbrs[1:])]
        for rot in cyc:
            st = local_status(trees[v], [edge(v, u) for u in rot])
            if st is not None:
                opts.append((rot, st))
        if not opts:
            return None
        options.append(opts)
    for combo in product(*options):
        colors: Dict[int, FrozenSet[str]] = {}
        ok = True
        for _, st in combo:
            for c, d in st.items():
                colors[c] = colors.get(c, frozenset((FWD, REV))) & d
                if not colors[c]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        rotation = {v: list(r) for v, (r, _) in zip(vertices, combo)}
        if is_planar_rotation(rotation):
            return rotation
    return None


def opposed_theta(second_color: int = 0) -> Tuple[List[str], List[Edge], Dict[str, CNode]]:
    """Theta graph between v1 and v2 (paths through v3, v4 and the edge
    v1v2) whose two vertices of degree three list the paths in the same
    order under SMC nodes.  Any planar embedding sees the three paths in
    opposite clockwise orders at v1 and v2, so with a shared color the
    constraints are unsatisfiable; recoloring the second node fixes that."""
    vertices = ["v1", "v2", "v3", "v4"]
    edges = [edge(*e) for e in (("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v3"), ("v2", "v4"))]
    trees = {
        "v1": smc(0, Leaf("v1", "v3"), Leaf("v1", "v2"), Leaf("v1", "v4")),
        "v2": smc(second_color, Leaf("v2", "v3"), Leaf("v2", "v1"), Leaf("v2", "v4")),
    }
    return vertices, edges, trees
