"""Crossing-free NodeTrix layouts from a witness permutation assignment.

The light reduction of the instance is collapsed to its frame, whose
rotation system is read off a clockwise embedding of the wheel reduction.
The frame gets a straight-line grid drawing; each cluster vertex is then
blown up into a square matrix sitting inside a small disk that no other
vertex or edge enters.  Inside the disk every edge leaves its row or column
extension through a short stub and spirals to the point where its straight
frame segment meets the disk boundary.  Stub ends and exit points appear in
the same clockwise order, so the spirals are pairwise disjoint.

Coordinates are y-up.  :func:`audit` checks the finished geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.planar_drawing import combinatorial_embedding_to_pos

from .model import ClusteredGraph, Edge, Incidence, PermutationAssignment, Side, edge, light_reduce
from .oracle import wheel_embedding
from .wheel import build_wheel, cluster_incidences

Point = Tuple[float, float]

_NORMAL = {Side.TOP: (0.0, 1.0), Side.RIGHT: (1.0, 0.0), Side.BOTTOM: (0.0, -1.0), Side.LEFT: (-1.0, 0.0)}
# direction of a clockwise walk along each side
_TANGENT = {Side.TOP: (1.0, 0.0), Side.RIGHT: (0.0, -1.0), Side.BOTTOM: (-1.0, 0.0), Side.LEFT: (0.0, 1.0)}

CELL = 14.0
STUB = 0.35  # stub length in cells
RELAX_LIMIT = 150  # frames larger than this keep the plain grid drawing
TWO_PI = 2 * math.pi


class LayoutError(RuntimeError):
    pass


@dataclass(frozen=True)
class MatrixBox:
    cluster: str
    x: float  # lower-left corner
    y: float
    size: float
    order: Tuple[str, ...]

    @property
    def cell(self) -> float:
        return self.size / len(self.order)

    def attachment(self, v: str, side: Side) -> Point:
        """Point where the extension of v's row or column meets ``side``."""
        j = self.order.index(v)
        off = (j + 0.5) * self.cell
        if side == Side.TOP:
            return (self.x + off, self.y + self.size)
        if side == Side.BOTTOM:
            return (self.x + off, self.y)
        if side == Side.LEFT:
            return (self.x, self.y + self.size - off)
        return (self.x + self.size, self.y + self.size - off)


@dataclass
class NodeTrixLayout:
    matrices: Dict[str, MatrixBox] = field(default_factory=dict)
    points: Dict[str, Point] = field(default_factory=dict)
    routes: Dict[Edge, List[Point]] = field(default_factory=dict)
    # (edge, cluster) -> attachment point on the prescribed side
    attachments: Dict[Incidence, Point] = field(default_factory=dict)
    intra: Dict[str, List[Edge]] = field(default_factory=dict)

    def bounds(self) -> Tuple[float, float, float, float]:
        xs: List[float] = []
        ys: List[float] = []
        for m in self.matrices.values():
            xs += [m.x, m.x + m.size]
            ys += [m.y, m.y + m.size]
        for p in self.points.values():
            xs.append(p[0])
            ys.append(p[1])
        for line in self.routes.values():
            xs += [p[0] for p in line]
            ys += [p[1] for p in line]
        if not xs:
            return (0.0, 0.0, 0.0, 0.0)
        return (min(xs), min(ys), max(xs), max(ys))


def _cw_angle(center: Point, p: Point) -> float:
    return (-math.atan2(p[1] - center[1], p[0] - center[0])) % TWO_PI


def _planar_embedding(rotation: Mapping[str, Sequence[str]]) -> nx.PlanarEmbedding:
    emb = nx.PlanarEmbedding()
    emb.add_nodes_from(rotation)
    for v, order in rotation.items():
        prev = None
        for w in order:
            if prev is None:
                emb.add_half_edge_first(v, w)
            else:
                emb.add_half_edge_cw(v, w, prev)
            prev = w
    emb.check_structure()
    return emb


def _rotate_to(seq: Sequence[str], first: str) -> List[str]:
    i = list(seq).index(first)
    return list(seq[i:]) + list(seq[:i])


def _frame_rotation(gl: ClusteredGraph, perms: PermutationAssignment):
    """Clockwise frame rotation of the light instance ``gl`` plus, per
    cluster, its incident inter-cluster edges in clockwise boundary order."""
    emb = wheel_embedding(gl, perms)
    if emb is None:
        raise LayoutError("permutations do not admit a clockwise wheel embedding")
    wheels = {c: build_wheel(c, perms[c], cluster_incidences(gl, c)) for c in gl.nontrivial_clusters}
    if wheels:
        w = next(iter(wheels.values()))
        hub = _rotate_to(emb[w.hub], w.cycle[0])
        if hub != list(w.cycle):
            emb = {v: list(reversed(r)) for v, r in emb.items()}
    # image endpoint -> inter edge
    by_end: Dict[Tuple[str, str], Edge] = {}
    for e in gl.inter_edges:
        ends = []
        for v in e:
            c = gl.cluster_of(v)
            ends.append(wheels[c].attachment[e] if c in wheels else v)
        by_end[(ends[0], ends[1])] = e
        by_end[(ends[1], ends[0])] = e

    around: Dict[str, List[Edge]] = {}
    for c, w in wheels.items():
        seq: List[Edge] = []
        n = len(w.cycle)
        for i, x in enumerate(w.cycle):
            prev, nxt = w.cycle[i - 1], w.cycle[(i + 1) % n]
            # contracting the spoke keeps the rotation at x after the hub;
            # edges nested in a wheel triangle come out next to their rim edge
            ext = [y for y in _rotate_to(emb[x], w.hub)[1:] if y not in (prev, nxt)]
            seq += [by_end[(x, y)] for y in ext]
        around[c] = seq
    for c, members in gl.clusters.items():
        if len(members) == 1:
            v = members[0]
            around[c] = [by_end[(v, y)] for y in emb.get(v, [])]
    rotation = {
        c: [gl.cluster_of(u) if gl.cluster_of(u) != c else gl.cluster_of(v) for u, v in seq]
        for c, seq in around.items()
    }
    return rotation, around


def _closest(p: Point, a: Point, b: Point) -> Tuple[float, Point]:
    ax, ay = b[0] - a[0], b[1] - a[1]
    L = ax * ax + ay * ay
    t = 0.0 if L == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * ax + (p[1] - a[1]) * ay) / L))
    return math.hypot(p[0] - a[0] - t * ax, p[1] - a[1] - t * ay), (a[0] + t * ax, a[1] + t * ay)


def _radii(pos: Mapping[str, Point], fedges: Sequence[Edge], clusters: Sequence[str]) -> Dict[str, float]:
    """Per cluster, a disk radius that no other vertex or edge reaches."""
    radius: Dict[str, float] = {}
    for c in clusters:
        d = math.inf
        for o, p in pos.items():
            if o != c:
                d = min(d, math.dist(pos[c], p) / 2)
        for a, b in fedges:
            if c not in (a, b):
                d = min(d, _closest(pos[c], pos[a], pos[b])[0])
        radius[c] = 0.45 * (d if d < math.inf else 1.0)
    return radius


def _consistent(rotation: Mapping[str, Sequence[str]], pos: Mapping[str, Point], v: str) -> bool:
    r = rotation[v]
    if len(r) < 3:
        return True
    angles = [_cw_angle(pos[v], pos[d]) for d in r]
    rel = [(a - angles[0]) % TWO_PI for a in angles]
    return all(x < y for x, y in zip(rel, rel[1:]))


def _crosses(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    return o1 * o2 <= 0 and o3 * o4 <= 0


def _relax(rotation: Mapping[str, Sequence[str]], pos: Dict[str, Point], score, iterations: int = 60) -> Dict[str, Point]:
    """Force-directed smoothing that never changes the embedding.

    A vertex moves less than its distance to any non-incident edge, and the
    move is kept only if its new edges cross nothing and the rotations at it
    and its neighbours survive.  Returns the best-scoring drawing seen.
    """
    nodes = sorted(rotation)
    edges = sorted({edge(c, d) for c, r in rotation.items() for d in r})
    pos = dict(pos)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    k = math.sqrt(max(max(xs) - min(xs), 1) * max(max(ys) - min(ys), 1) / len(nodes))
    temp = k
    best = (score(pos), dict(pos))
    for _ in range(iterations):
        for v in nodes:
            p = pos[v]
            fx = fy = 0.0
            clear = math.inf
            for u in nodes:
                if u != v:
                    dx, dy = p[0] - pos[u][0], p[1] - pos[u][1]
                    d = math.hypot(dx, dy) or 1e-9
                    clear = min(clear, d)
                    fx += dx * k * k / (d * d)
                    fy += dy * k * k / (d * d)
            for u in rotation[v]:
                dx, dy = pos[u][0] - p[0], pos[u][1] - p[1]
                d = math.hypot(dx, dy)
                fx += dx * d / k
                fy += dy * d / k
            for a, b in edges:
                if v not in (a, b):
                    d, q = _closest(p, pos[a], pos[b])
                    clear = min(clear, d)
                    d = d or 1e-9
                    fx += (p[0] - q[0]) * k * k / (d * d)
                    fy += (p[1] - q[1]) * k * k / (d * d)
            force = math.hypot(fx, fy)
            if force == 0:
                continue
            step = min(temp, force, 0.45 * clear)
            for _ in range(3):
                q = (p[0] + fx / force * step, p[1] + fy / force * step)
                pos[v] = q
                good = all(_consistent(rotation, pos, w) for w in (v, *rotation[v])) and not any(
                    _crosses(q, pos[u], pos[a], pos[b])
                    for u in rotation[v]
                    for a, b in edges
                    if v not in (a, b) and u not in (a, b)
                )
                if good:
                    break
                pos[v] = p
                step /= 2
        temp *= 0.95
        sc = score(pos)
        if sc > best[0]:
            best = (sc, dict(pos))
    return best[1]


def _square_radius(theta: float, half: float) -> float:
    # distance from the center to an axis-aligned square boundary along theta
    c, s = abs(math.cos(theta)), abs(math.sin(theta))
    return half / max(c, s)


def _spiral(center: Point, half: float, r_out: float, alpha: float, beta: float, steps: int) -> List[Point]:
    pts = []
    for i in range(steps + 1):
        t = i / steps
        th = alpha + t * (beta - alpha)
        rho = (1 - t) * _square_radius(th, half) + t * r_out
        pts.append((center[0] + rho * math.cos(th), center[1] - rho * math.sin(th)))
    return pts


def layout_nodetrix(g: ClusteredGraph, perms: PermutationAssignment, refine: int = 4) -> NodeTrixLayout:
    """Layout of ``g`` (fixed sides) with matrix orders ``perms``; raises
    :class:`LayoutError` when ``perms`` admits no planar drawing."""
    if g.sides is None:
        raise ValueError("layout needs a side assignment")
    gl = light_reduce(g)
    rotation, around = _frame_rotation(gl, perms)
    pos = {c: (float(x), float(y)) for c, (x, y) in combinatorial_embedding_to_pos(_planar_embedding(rotation)).items()}
    if not all(_consistent(rotation, pos, c) for c in rotation):
        pos = {v: (-x, y) for v, (x, y) in pos.items()}

    fedges = sorted({edge(gl.cluster_of(u), gl.cluster_of(v)) for u, v in gl.inter_edges})
    nontrivial = gl.nontrivial_clusters

    def cell_size(p: Mapping[str, Point]) -> float:
        # the matrix plus its stub margin must sit well inside the disk
        r = _radii(p, fedges, nontrivial)
        return min((r[c] / (1.25 * math.sqrt(2) * (len(gl.clusters[c]) / 2 + STUB)) for c in nontrivial), default=1.0)

    if nontrivial and 3 < len(pos) <= RELAX_LIMIT:

        def score(p: Mapping[str, Point]) -> float:
            xs = [q[0] for q in p.values()]
            ys = [q[1] for q in p.values()]
            return cell_size(p) / max(max(xs) - min(xs), max(ys) - min(ys))

        pos = _relax(rotation, pos, score)
    radius = _radii(pos, fedges, nontrivial)
    cell = cell_size(pos)
    scale = CELL / cell
    pos = {v: (x * scale, y * scale) for v, (x, y) in pos.items()}
    # spirals only need a thin ring around the matrix
    radius = {c: min(r * scale, 2.0 * math.sqrt(2) * CELL * (len(gl.clusters[c]) / 2 + STUB)) for c, r in radius.items()}

    out = NodeTrixLayout()
    for c in nontrivial:
        size = CELL * len(gl.clusters[c])
        out.matrices[c] = MatrixBox(c, pos[c][0] - size / 2, pos[c][1] - size / 2, size, tuple(perms[c]))
    for c, members in g.clusters.items():
        if len(members) == 1:
            out.points[members[0]] = pos[c]
    out.intra = {c: [e for e in g.intra_edges if g.cluster_of(e[0]) == c] for c in g.nontrivial_clusters}

    half_routes: Dict[Tuple[Edge, str], List[Point]] = {}
    for steps_scale in range(refine):
        half_routes.clear()
        for c in nontrivial:
            half_routes.update(_cluster_routes(gl, c, out.matrices[c], around[c], pos, radius[c], 2**steps_scale))
        out.routes = _join(g, gl, half_routes, pos)
        if not audit(out):
            break
    for e in g.inter_edges:
        for x in e:
            c = g.cluster_of(x)
            if not g.is_trivial(c):
                out.attachments[(e, c)] = out.matrices[c].attachment(x, g.side(e, c))
    return out


def _cluster_routes(gl, c, box: MatrixBox, seq: List[Edge], pos, r_out: float, density: int):
    if not seq:
        return {}
    center = pos[c]
    half = box.size / 2
    gap = STUB * CELL
    fans: Dict[Tuple[str, Side], List[Edge]] = {}
    ends: Dict[Edge, Tuple[str, Side]] = {}
    for e in seq:
        v = e[0] if gl.cluster_of(e[0]) == c else e[1]
        key = (v, gl.side(e, c))
        fans.setdefault(key, []).append(e)
        ends[e] = key
    stubs: Dict[Edge, Tuple[Point, Point]] = {}
    for (v, s), es in fans.items():
        a = box.attachment(v, s)
        n, t = _NORMAL[s], _TANGENT[s]
        m = len(es)
        for i, e in enumerate(es):
            off = 0.0 if m == 1 else (i / (m - 1) - 0.5) * 0.7 * box.cell
            b = (a[0] + gap * n[0] + off * t[0], a[1] + gap * n[1] + off * t[1])
            stubs[e] = (a, b)
    alphas = [_cw_angle(center, stubs[e][1]) for e in seq]
    betas = []
    for e in seq:
        other = gl.cluster_of(e[1]) if gl.cluster_of(e[0]) == c else gl.cluster_of(e[0])
        betas.append(_cw_angle(center, pos[other]))
    # unwrap both sequences into increasing runs shorter than a full turn
    ua = [alphas[0]]
    for a in alphas[1:]:
        ua.append(ua[-1] + (a - ua[-1]) % TWO_PI)
    ub = [ua[0] + (betas[0] - ua[0] + math.pi) % TWO_PI - math.pi]
    for b in betas[1:]:
        ub.append(ub[-1] + (b - ub[-1]) % TWO_PI)
    if len(seq) > 1 and (ua[-1] - ua[0] >= TWO_PI or ub[-1] - ub[0] >= TWO_PI):
        raise LayoutError(f"edge order around {c!r} is not cyclically consistent")
    gaps = [y - x for x, y in zip(ua, ua[1:])] + [y - x for x, y in zip(ub, ub[1:])]
    if len(seq) > 1:
        gaps += [TWO_PI - (ua[-1] - ua[0]), TWO_PI - (ub[-1] - ub[0])]
    min_gap = min(gaps, default=math.pi)
    routes = {}
    inner = half + gap
    for e, a0, b0 in zip(seq, ua, ub):
        steps = max(8, math.ceil(8 * abs(b0 - a0) / max(min_gap, 1e-9))) * density
        steps = min(steps, 4000)
        a, b = stubs[e]
        routes[(e, c)] = [a, *_spiral(center, inner, r_out, a0, b0, steps)]
    return routes


def _join(g: ClusteredGraph, gl: ClusteredGraph, half: Dict[Tuple[Edge, str], List[Point]], pos) -> Dict[Edge, List[Point]]:
    original = set(g.vertices)
    mids: Dict[Edge, str] = {}
    nbrs: Dict[str, List[str]] = {}
    for u, v in gl.edges:
        for a, b in ((u, v), (v, u)):
            if a not in original:
                nbrs.setdefault(a, []).append(b)
    for m, (u, v) in ((m, tuple(ns)) for m, ns in nbrs.items()):
        mids[edge(u, v)] = m
    routes: Dict[Edge, List[Point]] = {}
    for e in g.inter_edges:
        m = mids[e]
        parts = []
        for x in e:
            h = edge(x, m)
            c = gl.cluster_of(x)
            parts.append(half[(h, c)] if (h, c) in half else [pos[c]])
        routes[e] = parts[0] + [pos[m]] + parts[1][::-1]
    return routes


# -- audit ---------------------------------------------------------------------


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share a point."""
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


def _clip(a: Point, b: Point, box: Tuple[float, float, float, float]) -> Optional[Tuple[float, float]]:
    """Parameter interval of segment ab inside the closed box (Liang-Barsky)."""
    x0, y0, x1, y1 = box
    t0, t1 = 0.0, 1.0
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0] - x0), (dx, x1 - a[0]), (-dy, a[1] - y0), (dy, y1 - a[1])):
        if p == 0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    return (t0, t1)


def audit_geometry(
    polylines: Mapping[object, Sequence[Point]],
    boxes: Mapping[str, Tuple[float, float, float, float]],
    owners: Mapping[object, Sequence[str]] = {},
    tol: float = 1e-9,
) -> List[str]:
    """Edge-edge and edge-matrix conflicts of a drawing.

    Polylines may share endpoints.  A polyline may touch a box only at one
    of its endpoints, and only if the box is listed in ``owners``.
    """
    problems: List[str] = []
    segs = []
    for key, line in polylines.items():
        ends = {tuple(line[0]), tuple(line[-1])}
        for a, b in zip(line, line[1:]):
            if a != b:
                segs.append((key, tuple(a), tuple(b), ends))
    # matrices
    for key, a, b, ends in segs:
        for c, box in boxes.items():
            hit = _clip(a, b, box)
            if hit is None:
                continue
            t0, t1 = hit
            if c in owners.get(key, ()) and t1 - t0 <= tol:
                if (a in ends and t0 <= tol) or (b in ends and t0 >= 1 - tol):
                    continue
            problems.append(f"edge {key} meets matrix {c}")
    # edges: sweep over x with bounding-box pruning
    order = sorted(range(len(segs)), key=lambda i: min(segs[i][1][0], segs[i][2][0]))
    active: List[int] = []
    reported = set()
    for i in order:
        ki, a, b, ei = segs[i]
        x0 = min(a[0], b[0])
        y0, y1 = min(a[1], b[1]), max(a[1], b[1])
        active = [j for j in active if max(segs[j][1][0], segs[j][2][0]) >= x0]
        for j in active:
            kj, c, d, ej = segs[j]
            if ki == kj or max(c[1], d[1]) < y0 or min(c[1], d[1]) > y1:
                continue
            if (ki, kj) in reported or not segments_meet(a, b, c, d):
                continue
            shared = ei & ej
            if shared and _only_at(a, b, c, d, shared):
                continue
            reported.add((ki, kj))
            reported.add((kj, ki))
            problems.append(f"edges {ki} and {kj} cross")
        active.append(i)
    return problems


def _only_at(a: Point, b: Point, c: Point, d: Point, shared) -> bool:
    # the segments meet only in a common endpoint that both polylines end at
    common = {a, b} & {c, d} & shared
    if not common:
        return False
    p = next(iter(common))
    q1 = b if a == p else a
    q2 = d if c == p else c
    # collinear overlap starting at the shared point
    if _orient(p, q1, q2) == 0 and ((q1[0] - p[0]) * (q2[0] - p[0]) + (q1[1] - p[1]) * (q2[1] - p[1])) > 0:
        return False
    return True


def audit(layout: NodeTrixLayout) -> List[str]:
    boxes = {c: (m.x, m.y, m.x + m.size, m.y + m.size) for c, m in layout.matrices.items()}
    owners = {e: [c for (f, c) in layout.attachments if f == e] for e in layout.routes}
    # attachments are filled after routing; fall back to geometric ownership
    for e, line in layout.routes.items():
        if not owners[e]:
            owners[e] = [c for c, box in boxes.items() if _touches(line[0], box) or _touches(line[-1], box)]
    return audit_geometry(layout.routes, boxes, owners)


def _touches(p: Point, box) -> bool:
    x0, y0, x1, y1 = box
    return x0 <= p[0] <= x1 and y0 <= p[1] <= y1


__all__ = [
    "CELL",
    "LayoutError",
    "MatrixBox",
    "NodeTrixLayout",
    "audit",
    "audit_geometry",
    "layout_nodetrix",
    "segments_meet",
]
