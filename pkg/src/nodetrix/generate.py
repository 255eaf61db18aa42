"""Seeded random instances: clustered graphs over series-parallel,
partial-2-tree or planar frames, and small graphs with random constraint trees."""

from __future__ import annotations

import math
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .constraints import GC, MC, OC, SMC, CNode, Leaf, incident_edges
from .model import ClusteredGraph, Edge, Side, edge

FRAME_SHAPES = ("sp", "partial2tree", "planar")


def sp_frame(rng: random.Random, n: int) -> List[Tuple[int, int]]:
    """Biconnected series-parallel simple graph on ``n`` >= 3 nodes."""
    if n < 3:
        return [(0, 1)] if n == 2 else []
    edges = {(0, 1), (1, 2), (0, 2)}
    nxt = 3
    while nxt < n:
        a, b = rng.choice(sorted(edges))
        if rng.random() < 0.5:
            # series: subdivide
            edges.discard((a, b))
            edges |= {(a, nxt), (b, nxt)}
        else:
            # parallel: a new path of length two beside (a, b)
            edges |= {(a, nxt), (b, nxt)}
        nxt += 1
    return sorted(tuple(sorted(e)) for e in edges)


def partial_2_tree_frame(rng: random.Random, n: int, keep: float = 0.75) -> List[Tuple[int, int]]:
    """Random 2-tree on ``n`` nodes with each edge kept with probability ``keep``."""
    if n < 2:
        return []
    edges = {(0, 1)}
    for v in range(2, n):
        a, b = rng.choice(sorted(edges))
        edges |= {(a, v), (b, v)}
    return sorted(e for e in edges if rng.random() < keep)


def planar_frame(rng: random.Random, n: int, keep: float = 0.7) -> List[Tuple[int, int]]:
    """Random maximal planar graph grown by face insertion, thinned out."""
    if n < 3:
        return [(0, 1)] if n == 2 else []
    faces = [(0, 1, 2), (0, 2, 1)]
    edges = {(0, 1), (1, 2), (0, 2)}
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, v), (b, c, v), (c, a, v)]
        edges |= {tuple(sorted((x, v))) for x in (a, b, c)}
    return sorted(e for e in edges if rng.random() < keep)


def random_clustered_graph(
    rng: random.Random,
    n: int,
    k: int,
    shape: str = "partial2tree",
    light: bool = True,
    p_intra: float = 0.5,
    p_trivial: float = 0.3,
    max_nontrivial: Optional[int] = None,
    sides: bool = True,
    keep: float = 0.75,
) -> ClusteredGraph:
    """Clustered graph whose cluster graph has the given frame shape.

    ``n`` counts frame nodes; each becomes a cluster of size 1..k.  With
    ``light``, frame edges joining two non-trivial clusters are subdivided by
    a trivial cluster, which keeps the frame shape.
    """
    if shape not in FRAME_SHAPES:
        raise ValueError(f"unknown frame shape {shape!r}")
    if shape == "sp":
        fedges = sp_frame(rng, n)
    elif shape == "partial2tree":
        fedges = partial_2_tree_frame(rng, n, keep)
    else:
        fedges = planar_frame(rng, n, keep)
    sizes = []
    nontrivial = 0
    for _ in range(n):
        s = 1 if k < 2 or rng.random() < p_trivial else rng.randint(2, k)
        if s > 1 and max_nontrivial is not None and nontrivial >= max_nontrivial:
            s = 1
        nontrivial += s > 1
        sizes.append(s)
    clusters: Dict[str, Tuple[str, ...]] = {}
    for i, s in enumerate(sizes):
        name = f"c{i}"
        clusters[name] = (name,) if s == 1 else tuple(f"v{i}_{j}" for j in range(s))
    edges: List[Edge] = []
    for name, members in clusters.items():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if rng.random() < p_intra:
                    edges.append(edge(members[a], members[b]))
    extra = 0
    for a, b in fedges:
        u = rng.choice(clusters[f"c{a}"])
        v = rng.choice(clusters[f"c{b}"])
        if light and sizes[a] > 1 and sizes[b] > 1:
            mid = f"s{extra}"
            extra += 1
            clusters[mid] = (mid,)
            edges += [edge(u, mid), edge(mid, v)]
        else:
            edges.append(edge(u, v))
    g = ClusteredGraph.build(edges, clusters, vertices=[v for vs in clusters.values() for v in vs])
    if sides:
        g = g.with_sides({inc: rng.choice(list(Side)) for inc in g.required_incidences()})
    return g


# -- constraint trees -------------------------------------------------------


def random_constraint_tree(rng: random.Random, leaves: Sequence[Edge], colors: int = 2) -> CNode:
    """Random tree over ``leaves`` with uniformly drawn node kinds."""

    def grow(items: List[Edge]) -> CNode:
        if len(items) >= 2 and rng.random() < 0.5:
            k = rng.randint(2, len(items))
            cuts = sorted(rng.sample(range(1, len(items)), k - 1))
            parts = [items[a:b] for a, b in zip([0, *cuts], [*cuts, len(items)])]
        else:
            parts = [[x] for x in items]
        children = [Leaf(p[0]) if len(p) == 1 else grow(p) for p in parts]
        kind = rng.choice((OC, MC, GC, SMC))
        return CNode(kind, children, rng.randrange(colors) if kind == SMC else None)

    items = list(leaves)
    rng.shuffle(items)
    return grow(items)


def random_constrained_graph(
    rng: random.Random, max_edges: int = 9, max_vertices: int = 6, colors: int = 2, p_constrained: float = 0.8
) -> Tuple[List[str], List[Edge], Dict[str, CNode]]:
    n = rng.randint(3, max_vertices)
    vertices = [str(i) for i in range(n)]
    m = rng.randint(n - 1, min(max_edges, n * (n - 1) // 2))
    es = set()
    while len(es) < m:
        a, b = rng.sample(vertices, 2)
        es.add(edge(a, b))
    edges = sorted(es)
    inc = incident_edges(vertices, edges)
    trees = {
        v: random_constraint_tree(rng, inc[v], colors) for v in vertices if inc[v] and rng.random() < p_constrained
    }
    return vertices, edges, trees


# -- planar chains ------------------------------------------------------------


def _side_of(dx: float, dy: float) -> Side:
    if abs(dx) >= abs(dy):
        return Side.RIGHT if dx > 0 else Side.LEFT
    return Side.TOP if dy > 0 else Side.BOTTOM


# clockwise angle at which each side's sector starts
_SECTOR_START = {Side.TOP: 1.25 * math.pi, Side.RIGHT: 1.75 * math.pi, Side.BOTTOM: 0.25 * math.pi, Side.LEFT: 0.75 * math.pi}


def instance_from_drawing(
    rng: random.Random,
    points: Sequence[Tuple[float, float]],
    fedges: Sequence[Tuple[int, int]],
    k: int = 3,
    p_intra: float = 0.5,
) -> ClusteredGraph:
    """Light NodeTrix-planar instance over a straight-line planar frame drawing.

    Each frame node becomes a cluster of 1..k vertices.  Sides follow the
    direction of each edge, and within a side the attachments follow a random
    column order in clockwise order, so shrinking the matrices onto the
    points gives a planar representation.
    """
    sizes = [rng.randint(1, k) for _ in points]
    members = {i: [f"v{i}_{j}" for j in range(s)] if s > 1 else [f"c{i}"] for i, s in enumerate(sizes)}
    order = {i: rng.sample(vs, len(vs)) for i, vs in members.items()}
    pos: Dict[str, Tuple[float, float]] = {f"c{i}": p for i, p in enumerate(points)}
    arcs: List[Tuple[str, str]] = []
    for a, b in fedges:
        ca, cb = f"c{a}", f"c{b}"
        if sizes[a] > 1 and sizes[b] > 1:
            mid = f"s{a}_{b}"
            pos[mid] = ((points[a][0] + points[b][0]) / 2, (points[a][1] + points[b][1]) / 2)
            arcs += [(ca, mid), (mid, cb)]
        else:
            arcs.append((ca, cb))
    clusters: Dict[str, Tuple[str, ...]] = {f"c{i}": tuple(vs) for i, vs in members.items()}
    for name in pos:
        clusters.setdefault(name, (name,))
    by_side: Dict[Tuple[str, Side], List[Tuple[float, Tuple[str, str]]]] = {}
    for a, b in arcs:
        for x, y in ((a, b), (b, a)):
            if len(clusters[x]) > 1:
                dx, dy = pos[y][0] - pos[x][0], pos[y][1] - pos[x][1]
                s = _side_of(dx, dy)
                cw = (-math.atan2(dy, dx) - _SECTOR_START[s]) % (2 * math.pi)
                by_side.setdefault((x, s), []).append((cw, (a, b)))
    ends: Dict[Tuple[Tuple[str, str], str], str] = {}
    sides: Dict[Tuple[Tuple[str, str], str], Side] = {}
    for (x, s), items in sorted(by_side.items()):
        items.sort()
        perm = order[int(x[1:])]
        # clockwise, T and R list the columns in order, B and L reversed
        seq = perm if s in (Side.TOP, Side.RIGHT) else perm[::-1]
        picks = sorted(rng.randrange(len(seq)) for _ in items)
        for (_, arc), j in zip(items, picks):
            ends[(arc, x)] = seq[j]
            sides[(arc, x)] = s
    edges: List[Edge] = []
    inc: Dict[Tuple[Edge, str], Side] = {}
    for a, b in arcs:
        e = edge(ends.get(((a, b), a), clusters[a][0]), ends.get(((a, b), b), clusters[b][0]))
        edges.append(e)
        for x in (a, b):
            if ((a, b), x) in sides:
                inc[(e, x)] = sides[((a, b), x)]
    for vs in clusters.values():
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if rng.random() < p_intra:
                    edges.append(edge(vs[i], vs[j]))
    return ClusteredGraph(tuple(v for vs in clusters.values() for v in vs), tuple(edges), clusters, inc)


def sp_chain(rng: random.Random, n: int, k: int = 3, p_intra: float = 0.5) -> ClusteredGraph:
    """Planar instance whose frame is a chain of about ``n`` nodes: diamond j
    joins x = 3j and x = 3j + 3 by a straight edge and by paths through a
    top and a bottom node."""
    points: List[Tuple[float, float]] = [(0.0, 0.0)]
    fedges: List[Tuple[int, int]] = []
    while len(points) < n:
        left = len(points) - 1
        x = points[left][0]
        points += [(x + 1.5, 1.0), (x + 1.5, -1.0), (x + 3.0, 0.0)]
        top, bottom, right = left + 1, left + 2, left + 3
        fedges += [(left, top), (left, bottom), (top, right), (bottom, right), (left, right)]
    return instance_from_drawing(rng, points, fedges, k, p_intra)


def wheel_instance(rng: random.Random, n: int, k: int = 3, p_intra: float = 0.5) -> ClusteredGraph:
    """Planar instance over a wheel frame with ``n`` rim nodes; for n >= 3
    the frame contains K4 and is not a partial 2-tree."""
    points = [(0.0, 0.0)] + [
        (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)
    ]
    fedges = [(0, i + 1) for i in range(n)] + [(i + 1, (i + 1) % n + 1) for i in range(n)]
    return instance_from_drawing(rng, points, fedges, k, p_intra)
