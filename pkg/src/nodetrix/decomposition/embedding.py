"""Rotation systems of simple graphs and planarity testing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

V = Hashable


@dataclass
class CombinatorialEmbedding:
    """Clockwise cyclic order of neighbours around every vertex of a simple graph."""

    rotation: Dict[V, List[V]]
    _faces: Optional[List[List[Tuple[V, V]]]] = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> List[V]:
        return list(self.rotation)

    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    def successor(self, v: V, u: V) -> V:
        """Neighbour following ``u`` clockwise around ``v``."""
        r = self.rotation[v]
        return r[(r.index(u) + 1) % len(r)]

    @property
    def faces(self) -> List[List[Tuple[V, V]]]:
        if self._faces is None:
            self._faces = trace_faces(self.rotation)
        return self._faces

    def euler_ok(self) -> bool:
        """V - E + F == 2 on every connected component with at least one edge."""
        return is_planar_rotation(self.rotation)

    def mirrored(self) -> "CombinatorialEmbedding":
        return CombinatorialEmbedding({v: list(reversed(r)) for v, r in self.rotation.items()})

    def to_networkx(self) -> nx.PlanarEmbedding:
        emb = nx.PlanarEmbedding()
        for v, r in self.rotation.items():
            emb.add_node(v)
            prev = None
            for w in r:
                emb.add_half_edge(v, w, cw=prev) if prev is not None else emb.add_half_edge(v, w)
                prev = w
        return emb


class NonPlanar(Exception):
    def __init__(self, witness_edges: Sequence[Tuple[V, V]] = ()):
        super().__init__("graph is not planar")
        self.witness_edges = list(witness_edges)


def trace_faces(rotation: Dict[V, List[V]]) -> List[List[Tuple[V, V]]]:
    """Faces as lists of darts; the dart after (u, v) is (v, w) with w the
    neighbour preceding u clockwise around v."""
    pos = {v: {w: i for i, w in enumerate(r)} for v, r in rotation.items()}
    seen = set()
    faces = []
    for u, r in rotation.items():
        for v in r:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                rb = rotation[b]
                c = rb[(pos[b][a] - 1) % len(rb)]
                a, b = b, c
            faces.append(face)
    return faces


def _components(rotation: Dict[V, List[V]]) -> List[List[V]]:
    seen = set()
    comps = []
    for s in rotation:
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in rotation[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def is_planar_rotation(rotation: Dict[V, List[V]]) -> bool:
    """Euler check of a rotation system, component by component."""
    faces = trace_faces(rotation)
    face_of = {}
    for i, f in enumerate(faces):
        for d in f:
            face_of[d] = i
    for comp in _components(rotation):
        m = sum(len(rotation[v]) for v in comp) // 2
        if m == 0:
            continue
        fs = {face_of[(v, w)] for v in comp for w in rotation[v]}
        if len(comp) - m + len(fs) != 2:
            return False
    return True


def planar_embed(vertices: Iterable[V], edges: Iterable[Tuple[V, V]]) -> CombinatorialEmbedding:
    """Planar embedding of a simple graph; raises NonPlanar with a Kuratowski subgraph."""
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    ok, cert = nx.check_planarity(g, counterexample=True)
    if not ok:
        raise NonPlanar(list(cert.edges()))
    return CombinatorialEmbedding({v: list(cert.neighbors_cw_order(v)) for v in g.nodes})


def is_planar(vertices: Iterable[V], edges: Iterable[Tuple[V, V]]) -> bool:
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return nx.check_planarity(g)[0]
