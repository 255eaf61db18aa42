"""Wheels encoding matrix column orders, wheel reductions, labels and arcs.

A wheel of a cluster of size k has a hub and an oriented cycle of 4k side
copies.  Cycle positions are integers in ``range(4k)``: the copy of the
j-th vertex of the permutation on side X sits at ``position(j, X, k)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .model import ClusteredGraph, Edge, PermutationAssignment, Side

HUB = "hub"


def position(j: int, side: Side, k: int) -> int:
    """Cycle position of the side-``side`` copy of the j-th column."""
    side = Side(side)
    if side is Side.TOP:
        return j
    if side is Side.RIGHT:
        return k + j
    if side is Side.BOTTOM:
        return 2 * k + (k - 1 - j)
    return 3 * k + (k - 1 - j)


def copy_at(p: int, k: int) -> Tuple[int, Side]:
    """Inverse of :func:`position`."""
    block, r = divmod(p, k)
    side = Side(block)
    return (r, side) if side in (Side.TOP, Side.RIGHT) else (k - 1 - r, side)


def copy_name(cluster: str, v: str, side: Side) -> str:
    return f"{cluster}/{v}/{Side(side).letter}"


def hub_name(cluster: str) -> str:
    return f"{cluster}/{HUB}"


@dataclass(frozen=True)
class Wheel:
    cluster: str
    perm: Tuple[str, ...]
    hub: str
    cycle: Tuple[str, ...]  # cycle[p] is the vertex at position p
    attachment: Mapping[Edge, str]  # inter-cluster edge -> cycle vertex

    @property
    def k(self) -> int:
        return len(self.perm)

    @property
    def cycle_edges(self) -> List[Tuple[str, str]]:
        n = len(self.cycle)
        return [(self.cycle[i], self.cycle[(i + 1) % n]) for i in range(n)]

    @property
    def spokes(self) -> List[Tuple[str, str]]:
        return [(self.hub, c) for c in self.cycle]

    @property
    def vertices(self) -> List[str]:
        return [self.hub, *self.cycle]

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return self.cycle_edges + self.spokes

    def position_of(self, vertex: str) -> int:
        return self.cycle.index(vertex)


def build_wheel(
    cluster: str,
    perm: Sequence[str],
    incidences: Mapping[Edge, Tuple[str, Side]] = {},
) -> Wheel:
    """Wheel of ``cluster`` consistent with ``perm``.

    ``incidences`` maps each inter-cluster edge at the cluster to its
    endpoint in the cluster and its side there.
    """
    perm = tuple(perm)
    k = len(perm)
    if k < 2:
        raise ValueError("wheels are only built for clusters of size >= 2")
    cycle: List[str] = [""] * (4 * k)
    for j, v in enumerate(perm):
        for side in Side:
            cycle[position(j, side, k)] = copy_name(cluster, v, side)
    index = {v: j for j, v in enumerate(perm)}
    attachment = {}
    for e, (v, side) in incidences.items():
        attachment[e] = cycle[position(index[v], side, k)]
    return Wheel(cluster, perm, hub_name(cluster), tuple(cycle), attachment)


def cluster_incidences(g: ClusteredGraph, cluster: str) -> Dict[Edge, Tuple[str, Side]]:
    out = {}
    members = set(g.clusters[cluster])
    for e in g.inter_edges:
        for v in e:
            if v in members:
                out[e] = (v, g.side(e, cluster))
    return out


@dataclass(frozen=True)
class WheelReduction:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    wheels: Mapping[str, Wheel]
    image: Mapping[Edge, Tuple[str, str]]  # inter-cluster edge -> image edge


def wheel_reduction(g: ClusteredGraph, perms: PermutationAssignment) -> WheelReduction:
    """Replace every non-trivial cluster by its wheel consistent with ``perms``."""
    wheels: Dict[str, Wheel] = {}
    vertices: List[str] = []
    edges: List[Tuple[str, str]] = []
    for c in g.nontrivial_clusters:
        w = build_wheel(c, perms[c], cluster_incidences(g, c))
        wheels[c] = w
        vertices += w.vertices
        edges += w.edges
    for c, members in g.clusters.items():
        if len(members) == 1:
            vertices.append(members[0])
    image: Dict[Edge, Tuple[str, str]] = {}
    for e in g.inter_edges:
        ends = []
        for v in e:
            c = g.cluster_of(v)
            ends.append(wheels[c].attachment[e] if c in wheels else v)
        image[e] = (ends[0], ends[1])
        edges.append(image[e])
    return WheelReduction(tuple(vertices), tuple(edges), wheels, image)


# -- labels -------------------------------------------------------------------


class VertexLabel(enum.Enum):
    VOID = "void"
    INT = "int"
    EXT = "ext"
    INT_EXT = "int-ext"


def label_positions(n: int, intra: Iterable[int], extra: Iterable[int]) -> List[VertexLabel]:
    """Labels of the ``n`` cycle positions given the positions hit by intra-
    and extra-component images."""
    a, b = set(intra), set(extra)
    out = []
    for p in range(n):
        if p in a and p in b:
            out.append(VertexLabel.INT_EXT)
        elif p in a:
            out.append(VertexLabel.INT)
        elif p in b:
            out.append(VertexLabel.EXT)
        else:
            out.append(VertexLabel.VOID)
    return out


def label_wheel(wheel: Wheel, intra: Iterable[Edge], extra: Iterable[Edge]) -> Dict[str, VertexLabel]:
    """Label every cycle vertex from the inter-cluster edges whose images are
    intra- or extra-component at this wheel."""
    pos = {v: i for i, v in enumerate(wheel.cycle)}
    labels = label_positions(
        len(wheel.cycle),
        (pos[wheel.attachment[e]] for e in intra),
        (pos[wheel.attachment[e]] for e in extra),
    )
    return {v: labels[i] for i, v in enumerate(wheel.cycle)}


# -- arcs -----------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Clockwise run of ``size`` positions starting at ``first`` on a cycle of
    length ``n``.  ``size`` may be ``n + 1``: the whole cycle, starting and
    ending at ``first``.  Size 0 is the neutral EMPTY arc."""

    first: int
    size: int
    n: int

    @classmethod
    def span(cls, first: int, last: int, n: int) -> "Arc":
        return cls(first, (last - first) % n + 1, n)

    @classmethod
    def full_from(cls, p: int, n: int) -> "Arc":
        return cls(p, n + 1, n)

    @classmethod
    def empty_arc(cls, n: int) -> "Arc":
        return cls(0, 0, n)

    @property
    def empty(self) -> bool:
        return self.size == 0

    @property
    def last(self) -> int:
        return (self.first + self.size - 1) % self.n

    def __len__(self) -> int:
        return self.size

    def positions(self) -> List[int]:
        return sorted({(self.first + i) % self.n for i in range(self.size)})

    def offset(self, p: int) -> int:
        """Clockwise distance from ``first`` to ``p``."""
        return (p - self.first) % self.n

    def __contains__(self, p: int) -> bool:
        return not self.empty and (self.size > self.n or self.offset(p) < self.size)

    def strictly_inside(self, p: int) -> bool:
        return 0 < self.offset(p) < self.size - 1

    def complement(self) -> "Arc":
        """The run from ``last`` back to ``first`` (sharing both endpoints)."""
        if self.empty:
            return Arc(0, self.n, self.n)
        return Arc(self.last, self.n - self.size + 2, self.n)


def arc_from_positions(ps: Iterable[int], n: int) -> Optional[Arc]:
    """The arc covering exactly ``ps`` if it is a consecutive run, else None."""
    s = set(ps)
    if not s:
        return Arc.empty_arc(n)
    if len(s) == n:
        # the whole cycle; anchor it at 0
        return Arc(0, n, n)
    starts = [p for p in s if (p - 1) % n not in s]
    if len(starts) != 1:
        return None
    return Arc(starts[0], len(s), n)


def arc_union(a: Arc, b: Arc) -> Optional[Arc]:
    """Union of two arcs when it is a single consecutive run."""
    if a.empty:
        return b
    if b.empty:
        return a
    return arc_from_positions(set(a.positions()) | set(b.positions()), a.n)


def arc_intersection(a: Arc, b: Arc) -> Optional[Arc]:
    """Intersection of two arcs; EMPTY is neutral.  None when the overlap is
    two separate runs."""
    if a.empty:
        return b
    if b.empty:
        return a
    common = set(a.positions()) & set(b.positions())
    if not common:
        return None
    return arc_from_positions(common, a.n)


def internal_arcs(n: int, intra: Iterable[int], extra: Iterable[int], shared: Iterable[int] = ()) -> List[Arc]:
    """All arcs from an intra position to an intra position that contain every
    intra position and no extra position strictly inside.

    These are the admissible complete internal sequences; the complementary
    run (from ``last`` back to ``first``) is then a complete external
    sequence.  When some extra position exists at most two arcs survive
    (two only if the intra positions are exactly two int-ext vertices).

    ``shared`` lists intra positions carrying two or more intra edges.  Edges
    at one cycle vertex may leave in any order, so the intra edges at such a
    position can flank everything else there: the run may then go once
    around, from that position back to itself, provided every extra
    position is that same position.
    """
    ints = sorted(set(intra))
    if not ints:
        return []
    exts = set(extra)
    out = []
    for i, first in enumerate(ints):
        arc = Arc.span(first, ints[i - 1], n)
        if not any(arc.strictly_inside(p) for p in exts):
            out.append(arc)
    if len(ints) >= 2:
        for p in sorted(set(shared) & set(ints)):
            if exts <= {p}:
                out.append(Arc.full_from(p, n))
    return out


@dataclass(frozen=True)
class CompleteSequence:
    perm: Tuple[str, ...]
    arc: Arc
    kind: str  # "internal", "external" or "either"


def complete_sequences(
    labels: Sequence[VertexLabel], perm: Sequence[str] = ()
) -> Tuple[List[CompleteSequence], List[CompleteSequence]]:
    """Complete internal and external sequences of a labelled cycle.

    The external sequence of an internal arc is the complementary run that
    shares its two endpoints.  Arcs are reported for every admissible choice
    (in the two-int-ext special case both arcs, tagged "either").  With no
    external vertex the external sequence is the EMPTY arc; with no internal
    vertex the internal one is.
    """
    n = len(labels)
    perm = tuple(perm)
    ints = [p for p, lab in enumerate(labels) if lab in (VertexLabel.INT, VertexLabel.INT_EXT)]
    exts = [p for p, lab in enumerate(labels) if lab in (VertexLabel.EXT, VertexLabel.INT_EXT)]
    if not ints and not exts:
        e = Arc.empty_arc(n)
        return [CompleteSequence(perm, e, "internal")], [CompleteSequence(perm, e, "external")]
    if not ints:
        flip = internal_arcs(n, exts, [])
        return [CompleteSequence(perm, Arc.empty_arc(n), "internal")], [
            CompleteSequence(perm, a, "external") for a in flip
        ]
    arcs = internal_arcs(n, ints, exts)
    if not exts:
        return [CompleteSequence(perm, a, "internal") for a in arcs], [
            CompleteSequence(perm, Arc.empty_arc(n), "external")
        ]
    special = len(ints) == 2 and set(ints) == set(exts)
    kind_i, kind_e = ("either", "either") if special else ("internal", "external")
    internal = [CompleteSequence(perm, a, kind_i) for a in arcs]
    external = []
    for a in arcs:
        ext = a.complement()
        # the external run must hold every ext vertex and no int vertex inside
        if all(p in ext for p in exts) and not any(ext.strictly_inside(p) for p in ints):
            external.append(CompleteSequence(perm, ext, kind_e))
    return internal, external


def cyclically_sorted(ps: Sequence[int], n: int) -> bool:
    """True iff the positions, read in the given cyclic order, go around the
    cycle clockwise exactly once (ties allowed)."""
    if len(ps) <= 2:
        return True
    total = sum((ps[(i + 1) % len(ps)] - ps[i]) % n for i in range(len(ps)))
    return total in (0, n)


__all__ = [
    "Arc",
    "CompleteSequence",
    "VertexLabel",
    "Wheel",
    "WheelReduction",
    "arc_from_positions",
    "arc_intersection",
    "arc_union",
    "build_wheel",
    "cluster_incidences",
    "complete_sequences",
    "copy_at",
    "copy_name",
    "cyclically_sorted",
    "hub_name",
    "internal_arcs",
    "label_positions",
    "label_wheel",
    "position",
    "wheel_reduction",
]
