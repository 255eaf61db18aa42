"""Biconnected components and block-cut-vertex trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Set, Tuple

V = Hashable
E = Tuple[V, V]


class Disconnected(ValueError):
    pass


def _adjacency(vertices: Iterable[V], edges: Iterable[E]) -> Dict[V, List[V]]:
    adj: Dict[V, List[V]] = {v: [] for v in vertices}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


def biconnected_components(vertices: Iterable[V], edges: Iterable[E]) -> Tuple[List[List[E]], Set[V]]:
    """Edge sets of the blocks and the articulation points (iterative Tarjan)."""
    adj = _adjacency(vertices, edges)
    index: Dict[V, int] = {}
    low: Dict[V, int] = {}
    blocks: List[List[E]] = []
    cuts: Set[V] = set()
    counter = 0
    for root in adj:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        estack: List[E] = []
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    # simple graphs only: skip the tree edge back to the parent once
                    parent = object()
                    stack[-1] = (v, parent, it)
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if index[w] < index[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= index[u]:
                block = []
                while True:
                    e = estack.pop()
                    block.append(e)
                    if e == (u, v):
                        break
                blocks.append(block)
                if u == root:
                    root_children += 1
                else:
                    cuts.add(u)
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


@dataclass
class BlockCutTree:
    blocks: List[List[E]]
    cut_vertices: List[V]
    tree_edges: List[Tuple[int, V]]

    def block_vertices(self, i: int) -> Set[V]:
        return {x for e in self.blocks[i] for x in e}

    def blocks_at(self, c: V) -> List[int]:
        return [b for b, v in self.tree_edges if v == c]


def block_cut_tree(vertices: Iterable[V], edges: Iterable[E]) -> BlockCutTree:
    vertices = list(vertices)
    edges = list(edges)
    adj = _adjacency(vertices, edges)
    if adj:
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(adj):
            raise Disconnected("block-cut tree needs a connected graph")
    blocks, cuts = biconnected_components(vertices, edges)
    tree_edges = []
    for i, b in enumerate(blocks):
        vs = {x for e in b for x in e}
        for c in sorted(vs & cuts, key=repr):
            tree_edges.append((i, c))
    return BlockCutTree(blocks, sorted(cuts, key=repr), tree_edges)


def connected_components(vertices: Iterable[V], edges: Iterable[E]) -> List[Tuple[List[V], List[E]]]:
    adj = _adjacency(vertices, edges)
    comp_of: Dict[V, int] = {}
    comps: List[List[V]] = []
    for s in adj:
        if s in comp_of:
            continue
        comp_of[s] = len(comps)
        members = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = len(comps)
                    members.append(y)
                    stack.append(y)
        comps.append(members)
    comp_edges: List[List[E]] = [[] for _ in comps]
    for u, v in edges:
        comp_edges[comp_of[u]].append((u, v))
    return list(zip(comps, comp_edges))
