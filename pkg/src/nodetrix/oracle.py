"""Exhaustive NodeTrix planarity testers.

A graph is NodeTrix planar with fixed sides iff for some permutation
assignment its wheel reduction has a planar embedding in which every wheel
cycle runs clockwise.  The orientation requirement is stated as an oriented
constraint at each hub and decided by :func:`test_constrained`.

Permutations are searched depth first, clusters in name order and
permutations in lexicographic order, so the witness is always the first
accepting assignment of the flat enumeration.  A cluster whose permutation
is still open is represented by the wheel obtained by contracting each of
its four sides to a single rim vertex; that graph is a contraction of every
completion, so a rejection there prunes the whole subtree.
"""

from __future__ import annotations

import os
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .constrained import test_constrained
from .constraints import CNode, Leaf, oc
from .decomposition.embedding import is_planar
from .model import ClusteredGraph, Edge, Incidence, PermutationAssignment, Side, edge
from .verdict import BudgetExceeded, Verdict
from .wheel import build_wheel, cluster_incidences, copy_name, hub_name

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    raw = os.environ.get("NTP_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def permutation_space(g: ClusteredGraph) -> int:
    total = 1
    for c in g.nontrivial_clusters:
        total *= factorial(len(g.clusters[c]))
    return total


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.calls = 0

    def tick(self) -> None:
        self.calls += 1
        if self.calls > self.budget:
            raise BudgetExceeded(self.budget, None)


def constrained_instance(
    g: ClusteredGraph, perms: Mapping[str, Sequence[str]], compact: bool = False
) -> Tuple[List[str], List[Edge], Dict[str, CNode]]:
    """Wheel graph of ``g`` with hub orientation constraints.  Clusters
    missing from ``perms`` get a four-vertex rim, one vertex per side.

    With ``compact`` every rim keeps only the vertices that carry an edge
    (at least three): contracting rim edges preserves clockwise embeddings,
    and since wheel triangles can always be emptied the converse holds too.
    """
    vertices: List[str] = []
    edges: List[Edge] = []
    trees: Dict[str, CNode] = {}
    attach: Dict[Incidence, str] = {}
    for c in g.nontrivial_clusters:
        inc = cluster_incidences(g, c)
        if c in perms:
            w = build_wheel(c, perms[c], inc)
            rim = list(w.cycle)
            for e, x in w.attachment.items():
                attach[(e, c)] = x
        else:
            rim = [copy_name(c, "*", s) for s in Side]
            for e, (_, s) in inc.items():
                attach[(e, c)] = rim[s]
        if compact:
            used = set(attach[(e, c)] for e in inc)
            keep = [x for x in rim if x in used]
            for x in rim:
                if len(keep) >= 3:
                    break
                if x not in used:
                    keep.append(x)
            rim = [x for x in rim if x in keep]
        hub = hub_name(c)
        vertices += [hub, *rim]
        edges += [edge(hub, x) for x in rim]
        edges += [edge(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
        trees[hub] = oc(*(Leaf(hub, x) for x in rim))
    for c, members in g.clusters.items():
        if len(members) == 1:
            vertices.append(members[0])
    seen = set(edges)
    for e in g.inter_edges:
        ends = [attach.get((e, g.cluster_of(v)), v) for v in e]
        f = edge(*ends)
        if f not in seen:
            seen.add(f)
            edges.append(f)
    return vertices, edges, trees


def wheel_embedding(g: ClusteredGraph, perms: PermutationAssignment) -> Optional[Dict[str, List[str]]]:
    """Rotation system of the wheel reduction with every cycle clockwise, if any."""
    vs, es, trees = constrained_instance(g, perms)
    r = test_constrained(vs, es, trees, embed=True)
    return dict(r.embedding.rotation) if r.accepted else None


def _frame_planar(g: ClusteredGraph) -> bool:
    pairs = {edge(g.cluster_of(u), g.cluster_of(v)) for u, v in g.inter_edges}
    return is_planar(list(g.clusters), sorted(pairs))


def _search(g: ClusteredGraph, counter: _Counter, prune: bool) -> Iterator[PermutationAssignment]:
    clusters = g.nontrivial_clusters
    options = [list(permutations(g.clusters[c])) for c in clusters]

    def feasible(perms: Dict[str, Tuple[str, ...]]) -> bool:
        counter.tick()
        vs, es, trees = constrained_instance(g, perms, compact=True)
        return test_constrained(vs, es, trees, embed=False).accepted

    if not prune:
        for combo in product(*options):
            perms = dict(zip(clusters, combo))
            if feasible(perms):
                yield perms
        return

    def dfs(d: int, perms: Dict[str, Tuple[str, ...]]) -> Iterator[PermutationAssignment]:
        if not feasible(perms):
            return
        if d == len(clusters):
            yield dict(perms)
            return
        for p in options[d]:
            perms[clusters[d]] = p
            yield from dfs(d + 1, perms)
            del perms[clusters[d]]

    yield from dfs(0, {})


def oracle_fixed(
    g: ClusteredGraph,
    budget: Optional[int] = None,
    prune: bool = True,
) -> Verdict:
    """Exhaustive fixed-sides test; ``budget`` bounds the number of
    constrained-planarity calls."""
    counter = _Counter(default_budget() if budget is None else budget)
    return _oracle_fixed(g, counter, prune)


def _oracle_fixed(g: ClusteredGraph, counter: _Counter, prune: bool) -> Verdict:
    if g.sides is None:
        raise ValueError("oracle_fixed needs a side assignment")
    if not prune and permutation_space(g) > counter.budget - counter.calls:
        raise BudgetExceeded(counter.budget, permutation_space(g))
    if not _frame_planar(g):
        return Verdict(False, algorithm="oracle", detail="cluster graph is not planar")
    start = counter.calls
    for perms in _search(g, counter, prune):
        emb = wheel_embedding(g, perms)
        if emb is None:
            raise AssertionError("decision and witness runs disagree")
        return Verdict(True, perms, g.sides, emb, "oracle", stats={"calls": counter.calls - start})
    return Verdict(False, algorithm="oracle", stats={"calls": counter.calls - start})


def accepting_permutations(
    g: ClusteredGraph, budget: Optional[int] = None, prune: bool = True
) -> List[PermutationAssignment]:
    """Every permutation assignment whose wheel reduction embeds clockwise."""
    counter = _Counter(default_budget() if budget is None else budget)
    if not _frame_planar(g):
        return []
    return list(_search(g, counter, prune))


def side_assignments(g: ClusteredGraph) -> Iterator[Dict[Incidence, Side]]:
    inc = g.required_incidences()
    for combo in product(list(Side), repeat=len(inc)):
        yield dict(zip(inc, combo))


def oracle_free(g: ClusteredGraph, budget: Optional[int] = None, prune: bool = True) -> Verdict:
    """Exhaustive free-sides test: side assignments in canonical order, each
    delegated to the fixed-sides search under one shared call budget."""
    counter = _Counter(default_budget() if budget is None else budget)
    base = g.forget_sides()
    if not _frame_planar(base):
        return Verdict(False, algorithm="oracle-free", detail="cluster graph is not planar")
    n = 0
    for sides in side_assignments(base):
        n += 1
        v = _oracle_fixed(base.with_sides(sides), counter, prune)
        if v.planar:
            v.algorithm = "oracle-free"
            v.stats = {"calls": counter.calls, "side_assignments": n}
            return v
    return Verdict(False, algorithm="oracle-free", stats={"calls": counter.calls, "side_assignments": n})


__all__ = [
    "DEFAULT_BUDGET",
    "accepting_permutations",
    "constrained_instance",
    "default_budget",
    "oracle_fixed",
    "oracle_free",
    "permutation_space",
    "side_assignments",
    "wheel_embedding",
]
