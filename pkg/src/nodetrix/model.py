"""Flat clustered graphs, side assignments, light reduction and frame graphs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

Edge = Tuple[str, str]
Incidence = Tuple[Edge, str]


class Side(enum.IntEnum):
    """Matrix side an inter-cluster edge attaches to.

    The integer value gives the canonical order used for serialization and
    enumeration: TOP < RIGHT < BOTTOM < LEFT.
    """

    TOP = 0
    RIGHT = 1
    BOTTOM = 2
    LEFT = 3

    @property
    def letter(self) -> str:
        return self.name[0]

    @classmethod
    def from_letter(cls, letter: str) -> "Side":
        try:
            return _SIDE_LETTERS[letter.upper()]
        except KeyError:
            raise ValueError(f"unknown side {letter!r}") from None


_SIDE_LETTERS = {s.name[0]: s for s in Side}


class NotLight(ValueError):
    pass


def edge(u: str, v: str) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ClusteredGraph:
    """A flat clustered graph G = (V, E, C, Phi).

    ``clusters`` maps cluster names to their member vertices.  ``sides`` is
    keyed by (edge, cluster name) incidences so an edge joining two
    non-trivial clusters carries one side per endpoint.  ``sides`` is None
    for free-sides instances.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    clusters: Mapping[str, Tuple[str, ...]]
    sides: Optional[Mapping[Incidence, Side]] = None
    _cluster_of: Dict[str, str] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(edge(*e) for e in self.edges)))
        object.__setattr__(
            self, "clusters", {name: tuple(sorted(vs)) for name, vs in sorted(self.clusters.items())}
        )
        if self.sides is not None:
            object.__setattr__(
                self, "sides", {(edge(*e), c): Side(s) for (e, c), s in sorted(self.sides.items())}
            )
        for name, members in self.clusters.items():
            for v in members:
                # first cluster wins; duplicates are reported by validate()
                self._cluster_of.setdefault(v, name)

    @classmethod
    def build(
        cls,
        edges: Iterable[Edge],
        clusters: Mapping[str, Iterable[str]],
        sides: Optional[Mapping[Incidence, Side]] = None,
        vertices: Iterable[str] = (),
    ) -> "ClusteredGraph":
        """Build a graph, adding a trivial cluster (named after the vertex)
        for every vertex not covered by ``clusters``."""
        clusters = {name: tuple(vs) for name, vs in clusters.items()}
        vset = set(vertices)
        for u, v in edges:
            vset.update((u, v))
        for vs in clusters.values():
            vset.update(vs)
        covered = {v for vs in clusters.values() for v in vs}
        for v in sorted(vset - covered):
            if v in clusters:
                raise ValueError(f"vertex {v!r} collides with a cluster name")
            clusters[v] = (v,)
        return cls(tuple(vset), tuple(edges), clusters, sides)

    # -- basic queries ---------------------------------------------------

    def cluster_of(self, v: str) -> str:
        return self._cluster_of[v]

    def cluster_size(self, name: str) -> int:
        return len(self.clusters[name])

    def is_trivial(self, name: str) -> bool:
        return len(self.clusters[name]) == 1

    @property
    def nontrivial_clusters(self) -> List[str]:
        return [c for c, vs in self.clusters.items() if len(vs) > 1]

    @property
    def max_cluster_size(self) -> int:
        return max((len(vs) for vs in self.clusters.values()), default=0)

    def is_inter(self, e: Edge) -> bool:
        return self.cluster_of(e[0]) != self.cluster_of(e[1])

    @property
    def inter_edges(self) -> List[Edge]:
        return [e for e in self.edges if self.is_inter(e)]

    @property
    def intra_edges(self) -> List[Edge]:
        return [e for e in self.edges if not self.is_inter(e)]

    def side(self, e: Edge, cluster: str) -> Side:
        if self.sides is None:
            raise ValueError("graph has no side assignment")
        return self.sides[(edge(*e), cluster)]

    def required_incidences(self) -> List[Incidence]:
        """(edge, cluster) pairs that need a side: endpoints in non-trivial clusters."""
        out = []
        for e in self.inter_edges:
            for v in e:
                c = self.cluster_of(v)
                if not self.is_trivial(c):
                    out.append((e, c))
        return sorted(out)

    def with_sides(self, sides: Optional[Mapping[Incidence, Side]]) -> "ClusteredGraph":
        return ClusteredGraph(self.vertices, self.edges, self.clusters, sides)

    def forget_sides(self) -> "ClusteredGraph":
        return self.with_sides(None)


PermutationAssignment = Dict[str, Tuple[str, ...]]


def validate(g: ClusteredGraph) -> List[Violation]:
    """Return one violation per broken invariant; empty when ``g`` is well formed."""
    out: List[Violation] = []
    vset = set(g.vertices)
    seen: Dict[str, str] = {}
    for name, members in g.clusters.items():
        if not members:
            out.append(Violation("partition", f"cluster {name!r} is empty"))
        for v in members:
            if v not in vset:
                out.append(Violation("partition", f"cluster {name!r} lists unknown vertex {v!r}"))
            elif v in seen:
                out.append(Violation("partition", f"vertex {v!r} in clusters {seen[v]!r} and {name!r}"))
            else:
                seen[v] = name
    for v in sorted(vset - set(seen)):
        out.append(Violation("partition", f"vertex {v!r} belongs to no cluster"))

    edge_list = list(g.edges)
    if len(set(edge_list)) != len(edge_list):
        out.append(Violation("simple", "parallel edges"))
    for u, v in edge_list:
        if u == v:
            out.append(Violation("simple", f"loop at {u!r}"))
        for x in (u, v):
            if x not in vset:
                out.append(Violation("simple", f"edge ({u!r}, {v!r}) uses unknown vertex {x!r}"))
    if out:
        return out

    if g.sides is not None:
        required = set(g.required_incidences())
        present = set(g.sides)
        for e, c in sorted(required - present):
            out.append(Violation("domain", f"no side for edge {e} at cluster {c!r}"))
        for e, c in sorted(present - required):
            out.append(Violation("domain", f"unexpected side for edge {e} at cluster {c!r}"))
    return out


def is_light(g: ClusteredGraph) -> bool:
    touched = set()
    for u, v in g.inter_edges:
        cu, cv = g.cluster_of(u), g.cluster_of(v)
        tu, tv = g.is_trivial(cu), g.is_trivial(cv)
        if not tu and not tv:
            return False
        if tu != tv:
            key = (cu, cv) if tu else (cv, cu)
            if key in touched:
                return False
            touched.add(key)
    return True


def light_reduce(g: ClusteredGraph) -> ClusteredGraph:
    """Subdivide every inter-cluster edge once; the new vertex is a trivial cluster.

    Each side value moves to the half-edge incident to its original cluster.
    """
    names = set(g.vertices) | set(g.clusters)
    vertices = list(g.vertices)
    edges: List[Edge] = list(g.intra_edges)
    clusters: Dict[str, Tuple[str, ...]] = dict(g.clusters)
    sides: Optional[Dict[Incidence, Side]] = None if g.sides is None else {}
    for u, v in g.inter_edges:
        mid = f"{u}~{v}"
        while mid in names:
            mid += "'"
        names.add(mid)
        vertices.append(mid)
        clusters[mid] = (mid,)
        eu, ev = edge(u, mid), edge(mid, v)
        edges += [eu, ev]
        if sides is not None:
            for x, half in ((u, eu), (v, ev)):
                c = g.cluster_of(x)
                if not g.is_trivial(c):
                    sides[(half, c)] = g.side((u, v), c)
    return ClusteredGraph(tuple(vertices), tuple(edges), clusters, sides)


@dataclass(frozen=True)
class FrameGraph:
    """Graph obtained by collapsing every cluster to a single vertex.

    Frame vertices are cluster names.  ``source_edge`` maps each frame edge
    (canonical pair) to the inter-cluster edge of G it stands for.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    source_edge: Mapping[Edge, Edge]

    def adjacency(self) -> Dict[str, List[str]]:
        adj: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def frame(g: ClusteredGraph) -> FrameGraph:
    if not is_light(g):
        raise NotLight("frame of a non-light graph may be a multigraph")
    source: Dict[Edge, Edge] = {}
    for e in g.inter_edges:
        fe = edge(g.cluster_of(e[0]), g.cluster_of(e[1]))
        if fe in source:
            raise NotLight(f"frame edge {fe} would be doubled")
        source[fe] = e
    return FrameGraph(tuple(g.clusters), tuple(sorted(source)), source)
