"""NAE3SAT reductions to NodeTrix planarity.

A truth value travels along a *wire*: two parallel inter-cluster edges.
Between two clockwise wheels the clockwise order of the two edges at one
end is the reverse of the order at the other end, so the column order of
every size-2 or size-3 cluster on the wire is tied to its neighbours.

Fixed sides (k = 3).  The formula is drawn orthogonally: variables on a
row, clauses in a column, one polyline per literal occurrence.  Every
variable occurrence becomes a size-2 cluster of the variable's chain,
every crossing a size-3 cluster passing one wire through columns (a, b)
and the other through rows (b, c), every occurrence gets a size-2 literal
cluster next to its clause (the not gadget twists the outgoing wire), and
every clause three size-3 clusters synchronized by triples of parallel
edges, entered on the right at (a, b), (b, c) and (c, a).

Free sides (k = 5).  The fixed instance over the relocated drawing gets
extra edges (a cycle through the literal clusters of each clause and a
cycle through all variable chains), then every cluster is replaced by nine
size-5 clusters whose frame is a wheel with an eight-cycle rim; the
edges of each former side enter through one rim cluster.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .model import ClusteredGraph, Edge, Incidence, PermutationAssignment, Side, edge
from .verdict import Verdict

Point = Tuple[int, int]

MAX_BRUTE_VARIABLES = 20


class TooLarge(ValueError):
    pass


class FormulaSyntaxError(ValueError):
    pass


# -- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    var: str
    negated: bool = False

    def value(self, assignment: Dict[str, bool]) -> bool:
        return assignment[self.var] != self.negated

    def __str__(self) -> str:
        return ("-" if self.negated else "") + self.var


@dataclass(frozen=True)
class Nae3SatFormula:
    variables: Tuple[str, ...]
    clauses: Tuple[Tuple[Literal, Literal, Literal], ...]

    def __post_init__(self) -> None:
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise ValueError("duplicate variable")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have three literals")
            for lit in c:
                if lit.var not in known:
                    raise ValueError(f"undeclared variable {lit.var!r}")

    @classmethod
    def of(cls, *clauses: str, variables: Iterable[str] = ()) -> "Nae3SatFormula":
        """``Nae3SatFormula.of("x y -z", "-x y w")``."""
        return parse_formula("\n".join(clauses), variables)

    def satisfied_by(self, assignment: Dict[str, bool]) -> bool:
        return all(len({lit.value(assignment) for lit in c}) == 2 for c in self.clauses)

    def occurrences(self) -> List[Tuple[int, int, Literal]]:
        return [(j, t, lit) for j, c in enumerate(self.clauses) for t, lit in enumerate(c)]

    def __str__(self) -> str:
        return serialize_formula(self)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_formula(text: str, variables: Iterable[str] = ()) -> Nae3SatFormula:
    """One clause per line (``x -y z``); ``vars a b c`` declares variables,
    ``#`` starts a comment.  Undeclared variables are added in order of use."""
    declared = list(variables)
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "vars":
            declared += line[1:]
            continue
        if len(line) != 3:
            raise FormulaSyntaxError(f"line {lineno}: a clause needs 3 literals, got {len(line)}")
        lits = []
        for tok in line:
            neg = tok[0] in "-~!"
            name = tok[1:] if neg else tok
            if not _NAME.match(name):
                raise FormulaSyntaxError(f"line {lineno}: bad literal {tok!r}")
            lits.append(Literal(name, neg))
        clauses.append(tuple(lits))
    names = list(dict.fromkeys(declared))
    for c in clauses:
        for lit in c:
            if lit.var not in names:
                names.append(lit.var)
    return Nae3SatFormula(tuple(names), tuple(clauses))


def parse_formula_list(text: str) -> List[Nae3SatFormula]:
    """Formulas separated by ``---`` lines."""
    chunks: List[List[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == "---":
            chunks.append([])
        else:
            chunks[-1].append(line)
    return [parse_formula("\n".join(c)) for c in chunks if any(x.split("#", 1)[0].strip() for x in c)]


def small_formulas() -> List[Nae3SatFormula]:
    """The bundled set of formulas with at most two clauses over at most four variables."""
    from importlib.resources import files

    return parse_formula_list(files("nodetrix").joinpath("data/nae3sat_small.txt").read_text(encoding="utf-8"))


def serialize_formula(phi: Nae3SatFormula) -> str:
    lines = ["vars " + " ".join(phi.variables)] if phi.variables else []
    lines += [" ".join(str(lit) for lit in c) for c in phi.clauses]
    return "\n".join(lines) + "\n"


def nae_brute(phi: Nae3SatFormula) -> Optional[Dict[str, bool]]:
    """First not-all-equal assignment in lexicographic order (False < True),
    or None when there is none."""
    if len(phi.variables) > MAX_BRUTE_VARIABLES:
        raise TooLarge(f"{len(phi.variables)} variables, limit {MAX_BRUTE_VARIABLES}")
    for values in product((False, True), repeat=len(phi.variables)):
        a = dict(zip(phi.variables, values))
        if phi.satisfied_by(a):
            return a
    return None


# -- orthogonal drawing ---------------------------------------------------------

FIXED = "fixed"
TRICONNECTED = "triconnected"


@dataclass(frozen=True)
class Crossing:
    vertical: int  # occurrence whose segment is vertical at the point
    horizontal: int
    point: Point


@dataclass
class OrthogonalLayout:
    mode: str
    variable_points: Dict[str, Point]
    clause_points: Dict[int, Point]
    polylines: List[List[Point]]  # one per occurrence, variable end first
    occurrences: List[Tuple[int, int, Literal]]
    crossings: List[Crossing]
    variable_order: List[str]
    clause_order: List[int]

    def bends(self, i: int) -> int:
        return len(self.polylines[i]) - 2


def _segments(line: Sequence[Point]) -> List[Tuple[Point, Point]]:
    return list(zip(line, line[1:]))


def _cross(s: Tuple[Point, Point], t: Tuple[Point, Point]) -> Optional[Point]:
    """Interior crossing of a vertical and a horizontal segment."""
    (a, b), (c, d) = s, t
    if a[0] == b[0] and c[1] == d[1]:
        x, ys, y, xs = a[0], sorted((a[1], b[1])), c[1], sorted((c[0], d[0]))
    elif a[1] == b[1] and c[0] == d[0]:
        return _cross(t, s)
    else:
        if (a[0] == b[0] == c[0] == d[0] and max(a[1], b[1]) >= min(c[1], d[1]) and max(c[1], d[1]) >= min(a[1], b[1])) or (
            a[1] == b[1] == c[1] == d[1] and max(a[0], b[0]) >= min(c[0], d[0]) and max(c[0], d[0]) >= min(a[0], b[0])
        ):
            raise AssertionError(f"overlapping segments {s} {t}")
        return None
    if xs[0] <= x <= xs[1] and ys[0] <= y <= ys[1]:
        if xs[0] < x < xs[1] and ys[0] < y < ys[1]:
            return (x, y)
        raise AssertionError(f"segments {s} {t} touch at an end")
    return None


def find_crossings(polylines: Sequence[Sequence[Point]]) -> List[Crossing]:
    out = []
    for i, p in enumerate(polylines):
        for j in range(i + 1, len(polylines)):
            for s in _segments(p):
                for t in _segments(polylines[j]):
                    pt = _cross(s, t)
                    if pt is not None:
                        vi, hi = (i, j) if s[0][0] == s[1][0] else (j, i)
                        out.append(Crossing(vi, hi, pt))
    return sorted(out, key=lambda c: (c.vertical, c.horizontal))


def _orders(phi: Nae3SatFormula) -> Tuple[List[str], List[int]]:
    """Variable and clause orders minimising the crossings of the L-shaped
    drawing (exhaustive for small formulas, declaration order otherwise)."""
    vs, cs = list(phi.variables), list(range(len(phi.clauses)))
    if len(vs) > 6 or len(cs) > 4 or not cs:
        return vs, cs
    best = None
    for vo in permutations(vs):
        for co in permutations(cs):
            n = len(find_crossings(_l_shapes(phi, list(vo), list(co))[2]))
            if best is None or n < best[0]:
                best = (n, list(vo), list(co))
    return best[1], best[2]


def _slots(phi: Nae3SatFormula, vorder: List[str], corder: List[int]) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Column rank and row rank of every occurrence: columns grouped by
    variable, rows grouped by clause, each group sorted by the other rank so
    occurrences of one variable or one clause never cross each other."""
    occ = phi.occurrences()
    vrank = {v: i for i, v in enumerate(vorder)}
    crank = {c: i for i, c in enumerate(corder)}
    cols = sorted(range(len(occ)), key=lambda i: (vrank[occ[i][2].var], crank[occ[i][0]], occ[i][1]))
    col = {i: r for r, i in enumerate(cols)}
    rows = sorted(range(len(occ)), key=lambda i: (crank[occ[i][0]], col[i]))
    row = {i: r for r, i in enumerate(rows)}
    return col, row


def _l_shapes(phi, vorder, corder):
    col, row = _slots(phi, vorder, corder)
    lines = []
    for i in range(len(phi.occurrences())):
        x, y = 2 * col[i] + 2, 2 * row[i] + 2
        lines.append([(x, 0), (x, y), (0, y)])
    return col, row, lines


def layout_formula(phi: Nae3SatFormula, mode: str = FIXED) -> OrthogonalLayout:
    """Orthogonal drawing of the variable-clause graph.

    ``fixed``: clauses on the column x = 0, variables on the row y = 0, every
    occurrence an L-shape going up from its variable and left into its
    clause.  ``triconnected``: the leftmost variable moves to the left of
    the clause column and the bottommost clause below the variable row;
    their edges climb over, or run around, the rest of the drawing with
    three bends.
    """
    if mode not in (FIXED, TRICONNECTED):
        raise ValueError(f"unknown layout mode {mode!r}")
    vorder, corder = _orders(phi)
    occ = phi.occurrences()
    if mode == FIXED or not occ:
        col, row, lines = _l_shapes(phi, vorder, corder)
    else:
        lines = _relocated(phi, vorder, corder)
    vpts: Dict[str, Point] = {}
    cpts: Dict[int, Point] = {}
    for v in phi.variables:
        xs = [lines[i][0][0] for i, (_, _, lit) in enumerate(occ) if lit.var == v]
        vpts[v] = (sum(xs) // len(xs), 0) if xs else (0, 0)
    for j in range(len(phi.clauses)):
        ys = [lines[i][-1][1] for i, o in enumerate(occ) if o[0] == j]
        cpts[j] = (0, sum(ys) // len(ys))
    if len(phi.variables) == 1 and not occ:
        vpts[phi.variables[0]] = (2, 0)
    return OrthogonalLayout(mode, vpts, cpts, lines, occ, find_crossings(lines), vorder, corder)


def _relocated(phi: Nae3SatFormula, vorder: List[str], corder: List[int]) -> List[List[Point]]:
    occ = phi.occurrences()
    x1, c1 = vorder[0], corder[0]
    rest_v, rest_c = vorder[1:], corder[1:]
    col, row = _slots(phi, rest_v + [x1], rest_c + [c1])
    a_set = [i for i, o in enumerate(occ) if o[2].var == x1]  # from the left variable
    b_set = [i for i, o in enumerate(occ) if o[0] == c1]  # into the bottom clause
    regular = [i for i in range(len(occ)) if i not in a_set and i not in b_set]
    both = [i for i in a_set if i in b_set]
    a_only = sorted((i for i in a_set if i not in b_set), key=lambda i: row[i])  # outer first
    b_only = sorted((i for i in b_set if i not in a_set), key=lambda i: col[i])  # outer first
    n_d, n_h = len(a_only), len(b_only)
    # x-ranks: descents of the left variable's edges, then regular columns
    x0 = 2 * n_d + 2
    regcols = sorted({col[i] for i in regular + b_only})
    xcol = {c: x0 + 2 * k for k, c in enumerate(regcols)}
    y0 = 2 * n_h + 2
    regrows = sorted({row[i] for i in regular + a_only})
    yrow = {r: y0 + 2 * k for k, r in enumerate(regrows)}
    top = y0 + 2 * len(regrows) + 2
    right = x0 + 2 * len(regcols) + 2
    lines: List[Optional[List[Point]]] = [None] * len(occ)
    for i in regular:
        x, y = xcol[col[i]], yrow[row[i]]
        lines[i] = [(x, 0), (x, y), (0, y)]
    outer_a = both + a_only  # leftmost port first
    n_a = len(outer_a)
    for k, i in enumerate(outer_a):
        ax = -2 * (n_a - k)
        t = top + 2 * (n_a - k)
        if i in b_set:
            continue
        d = 2 * (n_d - a_only.index(i))
        y = yrow[row[i]]
        lines[i] = [(ax, 0), (ax, t), (d, t), (d, y), (0, y)]
    outer_b = both + b_only
    n_b = len(outer_b)
    for k, i in enumerate(outer_b):
        r = right + 2 * (n_b - k)
        b = -2 * (n_b - k)
        if i in a_set:
            ax = -2 * (n_a - outer_a.index(i))
            t = top + 2 * (n_a - outer_a.index(i))
            lines[i] = [(ax, 0), (ax, t), (r, t), (r, b), (0, b)]
        else:
            x = xcol[col[i]]
            h = 2 * (n_h - b_only.index(i))
            lines[i] = [(x, 0), (x, h), (r, h), (r, b), (0, b)]
    return lines  # type: ignore[return-value]


def planarized(layout: OrthogonalLayout, phi: Optional[Nae3SatFormula] = None) -> nx.Graph:
    """The drawing with crossings replaced by dummy vertices."""
    g = nx.Graph()
    if phi is not None:
        g.add_nodes_from(f"v:{v}" for v in phi.variables)
    by_occ: Dict[int, List[Tuple[int, str]]] = {i: [] for i in range(len(layout.polylines))}
    for k, c in enumerate(layout.crossings):
        for i in (c.vertical, c.horizontal):
            by_occ[i].append((_arclength(layout.polylines[i], c.point), f"x{k}"))
    for v in layout.variable_points:
        g.add_node(f"v:{v}")
    for j in layout.clause_points:
        g.add_node(f"c:{j}")
    for j, _, _ in layout.occurrences:
        g.add_node(f"c:{j}")
    for i, (j, _, lit) in enumerate(layout.occurrences):
        chain = [f"v:{lit.var}"] + [n for _, n in sorted(by_occ[i])] + [f"c:{j}"]
        for a, b in zip(chain, chain[1:]):
            g.add_edge(a, b)
    return g


def _triconnected(f: nx.Graph) -> bool:
    return f.number_of_nodes() >= 4 and nx.node_connectivity(f) >= 3


def _arclength(line: Sequence[Point], p: Point) -> int:
    total = 0
    for a, b in _segments(line):
        lo_x, hi_x = sorted((a[0], b[0]))
        lo_y, hi_y = sorted((a[1], b[1]))
        if lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y:
            return total + abs(p[0] - a[0]) + abs(p[1] - a[1])
        total += abs(b[0] - a[0]) + abs(b[1] - a[1])
    raise ValueError(f"{p} is not on the polyline")


def _direction(a: Point, b: Point) -> str:
    if a[0] == b[0]:
        return "up" if b[1] > a[1] else "down"
    return "right" if b[0] > a[0] else "left"


_LEAVE = {"up": Side.TOP, "right": Side.RIGHT, "down": Side.BOTTOM, "left": Side.LEFT}
_ENTER = {"up": Side.BOTTOM, "right": Side.LEFT, "down": Side.TOP, "left": Side.RIGHT}


def reverses(side: Side) -> bool:
    """Whether the clockwise order along ``side`` is the reverse of the
    column order (bottom and left run right-to-left and bottom-to-top)."""
    return side in (Side.BOTTOM, Side.LEFT)


def wire_parity(out_side: Side, in_side: Side) -> bool:
    """True iff a wire leaving on ``out_side`` and entering on ``in_side``
    inverts the encoded value (first end before second end)."""
    return not (reverses(out_side) ^ reverses(in_side))


# -- fixed-sides reduction -------------------------------------------------------

VAR, LIT, NOT, CROSS, CLAUSE = "var", "lit", "not", "cross", "clause"


@dataclass
class GadgetInfo:
    """Where each gadget of a reduction ended up."""

    kind: Dict[str, str] = field(default_factory=dict)  # cluster -> gadget kind
    chains: Dict[str, List[str]] = field(default_factory=dict)  # variable -> chain clusters
    literal: Dict[int, str] = field(default_factory=dict)  # occurrence -> literal cluster
    clause: Dict[int, List[str]] = field(default_factory=dict)  # clause -> 3 clusters, top first
    crossing: Dict[Tuple[int, int], str] = field(default_factory=dict)  # (vertical, horizontal) occ
    paths: Dict[int, List[str]] = field(default_factory=dict)  # occurrence -> clusters var..clause
    # occurrence -> hops (from, from ends, side, to, to ends, side), twist applied
    wires: Dict[int, List[tuple]] = field(default_factory=dict)
    extra: List[Edge] = field(default_factory=list)


@dataclass
class Reduction:
    formula: Nae3SatFormula
    layout: OrthogonalLayout
    graph: ClusteredGraph
    gadgets: GadgetInfo


class _Builder:
    def __init__(self) -> None:
        self.clusters: Dict[str, Tuple[str, ...]] = {}
        self.edges: List[Edge] = []
        self.sides: Dict[Incidence, Side] = {}
        self.info = GadgetInfo()

    def cluster(self, name: str, kind: str, size: int) -> str:
        letters = "abc" if size == 3 else "12"
        self.clusters[name] = tuple(f"{name}.{x}" for x in letters[:size])
        self.info.kind[name] = kind
        return name

    def v(self, cluster: str, letter: str) -> str:
        return f"{cluster}.{letter}"

    def link(self, u: str, su: Side, w: str, sw: Side) -> Edge:
        e = edge(u, w)
        if e in self.sides or (e, u.rsplit(".", 1)[0]) in self.sides:
            raise AssertionError(f"duplicate edge {e}")
        self.edges.append(e)
        self.sides[(e, u.rsplit(".", 1)[0])] = su
        self.sides[(e, w.rsplit(".", 1)[0])] = sw
        return e

    def wire(self, a: str, ends_a: Tuple[str, str], sa: Side, b: str, ends_b: Tuple[str, str], sb: Side, twist=False):
        """Two parallel edges from ``a`` (side sa) to ``b`` (side sb)."""
        x1, x2 = (self.v(a, x) for x in ends_a)
        y1, y2 = (self.v(b, x) for x in ends_b)
        if twist:
            y1, y2 = y2, y1
        self.link(x1, sa, y1, sb)
        self.link(x2, sa, y2, sb)
        return (a, (x1, x2), sa, b, (y1, y2), sb)

    def graph(self) -> ClusteredGraph:
        return ClusteredGraph.build(self.edges, self.clusters, self.sides)


_CLAUSE_ENDS = (("a", "b"), ("b", "c"), ("c", "a"))


def _name(idx: int, label: str) -> str:
    return f"n{idx:03d}_{label}"


def _plan(phi: Nae3SatFormula, layout: OrthogonalLayout):
    """Cluster sequence along every occurrence path, plus the order in which
    clusters are named (the oracle searches clusters in name order, so
    clusters are named as a propagation sweep reaches them)."""
    occ = layout.occurrences
    on_path: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(len(occ))}
    for k, c in enumerate(layout.crossings):
        for i in (c.vertical, c.horizontal):
            on_path[i].append((_arclength(layout.polylines[i], c.point), k))
    seq = {i: [k for _, k in sorted(on_path[i])] for i in range(len(occ))}
    return seq


def reduce_fixed(phi: Nae3SatFormula, mode: str = FIXED, layout: Optional[OrthogonalLayout] = None) -> Reduction:
    """Fixed-sides instance (clusters of size 2 and 3) that is NodeTrix planar
    iff ``phi`` is NAE-satisfiable."""
    layout = layout or layout_formula(phi, mode)
    occ = layout.occurrences
    seq = _plan(phi, layout)
    b = _Builder()
    names: Dict[Tuple[str, object], str] = {}
    counter = [0]

    def name(key, label, kind, size) -> str:
        if key not in names:
            names[key] = b.cluster(_name(counter[0], label), kind, size)
            counter[0] += 1
        return names[key]

    by_var: Dict[str, List[int]] = {v: [] for v in phi.variables}
    for i, (_, _, lit) in enumerate(occ):
        by_var[lit.var].append(i)
    for v in by_var:
        by_var[v].sort(key=lambda i: layout.polylines[i][0][0])
    # naming sweep: clause by clause, each literal path from its variable
    for j in layout.clause_order:
        for i in sorted((i for i in range(len(occ)) if occ[i][0] == j), key=lambda i: -layout.polylines[i][-1][1]):
            var = occ[i][2].var
            for k, o in enumerate(by_var[var]):
                name(("var", o), f"var_{var}_{k}", VAR, 2)
            for k in seq[i]:
                c = layout.crossings[k]
                name(("cross", k), f"cross_{c.vertical}_{c.horizontal}", CROSS, 3)
            lit = occ[i][2]
            name(("lit", i), f"{NOT if lit.negated else LIT}_{i}", NOT if lit.negated else LIT, 2)
        for t in range(3):
            name(("clause", j, t), f"clause_{j}_{t}", CLAUSE, 3)
    for v in phi.variables:
        b.info.chains[v] = [names[("var", o)] for o in by_var[v]]

    # variable chains: right side of one cluster to the bottom of the next
    for chain in b.info.chains.values():
        for p, q in zip(chain, chain[1:]):
            b.wire(p, ("1", "2"), Side.RIGHT, q, ("1", "2"), Side.BOTTOM)

    # clause gadgets: top cluster first; triples of parallel edges
    for j in range(len(phi.clauses)):
        ks = [names[("clause", j, t)] for t in range(3)]
        b.info.clause[j] = ks
        for p, q in ((ks[0], ks[1]), (ks[1], ks[2])):
            for x in "abc":
                b.link(b.v(p, x), Side.BOTTOM, b.v(q, x), Side.TOP)
        for x in "abc":
            b.link(b.v(ks[2], x), Side.LEFT, b.v(ks[0], x), Side.TOP)

    # literal paths
    parities = set()
    for i, (j, _, lit) in enumerate(occ):
        line = layout.polylines[i]
        segs = _segments(line)
        var_c = names[("var", i)]
        lit_c = names[("lit", i)]
        rank = sorted(
            (o for o in range(len(occ)) if occ[o][0] == j), key=lambda o: -layout.polylines[o][-1][1]
        ).index(i)
        clause_c = b.info.clause[j][rank]
        hops: List[Tuple[str, Tuple[str, str], str]] = [(var_c, ("1", "2"), "up")]
        path = [var_c]
        for k in seq[i]:
            c = layout.crossings[k]
            xc = names[("cross", k)]
            for s in segs:
                if _on(s, c.point):
                    d = _direction(*s)
            ends = ("a", "b") if c.vertical == i else ("b", "c")
            hops.append((xc, ends, d))
            path.append(xc)
            b.info.crossing[(c.vertical, c.horizontal)] = xc
        hops.append((lit_c, ("1", "2"), "left"))
        ws = []
        for (p, pe, pd), (q, qe, qd) in zip(hops, hops[1:]):
            ws.append(b.wire(p, pe, _LEAVE[pd], q, qe, _ENTER[qd]))
        # literal cluster to clause: left side into the right side
        ws.append(b.wire(lit_c, ("1", "2"), Side.LEFT, clause_c, _CLAUSE_ENDS[rank], Side.RIGHT, twist=lit.negated))
        b.info.wires[i] = ws
        parities.add(sum(wire_parity(w[2], w[5]) for w in ws[:-1]) % 2)
        b.info.literal[i] = lit_c
        b.info.paths[i] = path + [lit_c, clause_c]
    if len(parities) > 1:
        raise AssertionError("literal paths disagree on their parity")
    return Reduction(phi, layout, b.graph(), b.info)


def _on(s: Tuple[Point, Point], p: Point) -> bool:
    (a, c) = s
    return min(a[0], c[0]) <= p[0] <= max(a[0], c[0]) and min(a[1], c[1]) <= p[1] <= max(a[1], c[1])


def encoded_value(perm: Sequence[str], first: str, second: str) -> bool:
    return perm.index(first) < perm.index(second)


def variable_value(r: Reduction, perms: PermutationAssignment, cluster: str) -> bool:
    """True iff the cluster's column order is its sorted (true) order."""
    vs = r.graph.clusters[cluster]
    return encoded_value(perms[cluster], vs[0], vs[1])


def witness_permutations(r: Reduction, assignment: Dict[str, bool]) -> PermutationAssignment:
    """Column orders realising a NAE-satisfying ``assignment``: values are
    pushed along every wire, crossings get any order meeting both wires,
    and each clause takes the linear order of (a, b, c) its inputs describe."""
    g = r.graph
    perms: PermutationAssignment = {}
    for v, chain in r.gadgets.chains.items():
        for c in chain:
            u1, u2 = g.clusters[c]
            perms[c] = (u1, u2) if assignment[v] else (u2, u1)
    pairs: Dict[str, List[Tuple[str, str]]] = {}
    for i, hops in r.gadgets.wires.items():
        value = assignment[r.formula.occurrences()[i][2].var]
        for p, _, sp, q, (y1, y2), sq in hops:
            value ^= wire_parity(sp, sq)
            pairs.setdefault(q, []).append((y1, y2) if value else (y2, y1))
    for c, ps in pairs.items():
        if r.gadgets.kind[c] in (LIT, NOT):
            perms[c] = ps[0]
        elif r.gadgets.kind[c] == CROSS:
            perms[c] = _linear(g.clusters[c], ps)
    for ks in r.gadgets.clause.values():
        letters = [(x[-1], y[-1]) for k in ks for x, y in pairs.get(k, [])]
        order = _linear("abc", letters)
        for k in ks:
            perms[k] = tuple(f"{k}.{x}" for x in order)
    return perms


def _linear(members: Sequence[str], pairs: List[Tuple[str, str]]) -> Tuple[str, ...]:
    for p in permutations(members):
        if all(p.index(x) < p.index(y) for x, y in pairs):
            return p
    raise ValueError("inconsistent order constraints")


# -- gadgets in isolation ------------------------------------------------------------


@dataclass
class Gadget:
    graph: ClusteredGraph
    core: List[str]  # the gadget's own clusters
    inputs: List[str]  # size-2 clusters feeding it
    outputs: List[str]  # size-2 clusters fed by it


def crossing_gadget() -> Gadget:
    """A crossing cluster between two wires: the vertical one enters at the
    bottom and leaves at the top through columns (a, b), the horizontal one
    enters on the right and leaves on the left through rows (b, c).

    A lone wire is not rigid (its second edge may wrap around the far
    cluster), so the four terminals are joined in a ring of single edges,
    which makes the frame a wheel and adds no order constraint."""
    b = _Builder()
    sv, sh, x, nv, nh = (b.cluster(n, k, z) for n, k, z in (
        ("in_v", LIT, 2), ("in_h", LIT, 2), ("x", CROSS, 3), ("out_v", LIT, 2), ("out_h", LIT, 2)))
    b.wire(sv, ("1", "2"), Side.TOP, x, ("a", "b"), Side.BOTTOM)
    b.wire(x, ("a", "b"), Side.TOP, nv, ("1", "2"), Side.BOTTOM)
    b.wire(sh, ("1", "2"), Side.LEFT, x, ("b", "c"), Side.RIGHT)
    b.wire(x, ("b", "c"), Side.LEFT, nh, ("1", "2"), Side.RIGHT)
    # ring, clockwise: top, right, bottom, left
    b.link(b.v(nv, "1"), Side.RIGHT, b.v(sh, "1"), Side.TOP)
    b.link(b.v(sh, "2"), Side.BOTTOM, b.v(sv, "1"), Side.RIGHT)
    b.link(b.v(sv, "2"), Side.LEFT, b.v(nh, "1"), Side.BOTTOM)
    b.link(b.v(nh, "2"), Side.TOP, b.v(nv, "2"), Side.LEFT)
    return Gadget(b.graph(), [x], [sv, sh], [nv, nh])


def clause_gadget() -> Gadget:
    """Three synchronized size-3 clusters, each fed on the right by a literal
    cluster; the literal clusters form a cycle (its closing edge runs around
    the clause on the left) so that every wire is rigid."""
    b = _Builder()
    ins = [b.cluster(f"in{t}", LIT, 2) for t in range(3)]
    ks = [b.cluster(f"k{t}", CLAUSE, 3) for t in range(3)]
    for p, q in ((ks[0], ks[1]), (ks[1], ks[2])):
        for x in "abc":
            b.link(b.v(p, x), Side.BOTTOM, b.v(q, x), Side.TOP)
    for x in "abc":
        b.link(b.v(ks[2], x), Side.LEFT, b.v(ks[0], x), Side.TOP)
    for t in range(3):
        b.wire(ins[t], ("1", "2"), Side.LEFT, ks[t], _CLAUSE_ENDS[t], Side.RIGHT)
    for p, q in zip(ins, ins[1:] + ins[:1]):
        b.link(b.v(p, "2"), Side.BOTTOM, b.v(q, "1"), Side.TOP)
    return Gadget(b.graph(), ks, ins, [])


def variable_gadget(h: int) -> Gadget:
    """Chain of ``h`` >= 2 size-2 clusters, each emitting its value on top to
    an output cluster.  The chain is closed below and the outputs are
    chained and closed above, so the frame is a prism."""
    if h < 2:
        raise ValueError("a variable gadget fixture needs at least two clusters")
    b = _Builder()
    chain = [b.cluster(f"v{i}", VAR, 2) for i in range(h)]
    outs = [b.cluster(f"w{i}", LIT, 2) for i in range(h)]
    for p, q in zip(chain, chain[1:]):
        b.wire(p, ("1", "2"), Side.RIGHT, q, ("1", "2"), Side.BOTTOM)
    for p, q in zip(chain, outs):
        b.wire(p, ("1", "2"), Side.TOP, q, ("1", "2"), Side.BOTTOM)
    b.link(b.v(chain[-1], "2"), Side.RIGHT, b.v(chain[0], "1"), Side.LEFT)
    for p, q in zip(outs, outs[1:]):
        b.link(b.v(p, "1"), Side.RIGHT, b.v(q, "1"), Side.LEFT)
    b.link(b.v(outs[-1], "2"), Side.TOP, b.v(outs[0], "2"), Side.TOP)
    return Gadget(b.graph(), chain, [], outs)


def pair_value(g: ClusteredGraph, perms: PermutationAssignment, cluster: str, first: str, second: str) -> bool:
    return encoded_value(perms[cluster], f"{cluster}.{first}", f"{cluster}.{second}")


# -- free-sides reduction ---------------------------------------------------------------

GADGET_SIZE = 5
RIM = 8


@dataclass
class FreeReduction:
    formula: Nae3SatFormula
    fixed: Reduction  # the fixed instance with its extra edges
    graph: ClusteredGraph  # no side assignment
    wheels: Dict[str, Tuple[str, List[str]]]  # fixed cluster -> (hub, rim clusters clockwise from top)


def _add_extra_edges(r: Reduction) -> Reduction:
    """Cycle through the literal clusters of every clause (the closing edge
    runs around the clause on the left) and a cycle through all variable
    chains, from the right end of one chain into the bottom of the next,
    closed around the whole drawing."""
    g = r.graph
    edges = list(g.edges)
    sides = dict(g.sides)
    extra: List[Edge] = []

    def add(u: str, su: Side, w: str, sw: Side) -> None:
        e = edge(u, w)
        if e in edges:
            raise AssertionError(f"duplicate edge {e}")
        edges.append(e)
        extra.append(e)
        sides[(e, g.cluster_of(u))] = su
        sides[(e, g.cluster_of(w))] = sw

    occ = r.layout.occurrences
    for j in r.gadgets.clause:
        lits = sorted((i for i in range(len(occ)) if occ[i][0] == j), key=lambda i: -r.layout.polylines[i][-1][1])
        ls = [r.gadgets.literal[i] for i in lits]
        for p, q in zip(ls, ls[1:]):
            add(f"{p}.2", Side.BOTTOM, f"{q}.1", Side.TOP)
        add(f"{ls[-1]}.2", Side.BOTTOM, f"{ls[0]}.1", Side.TOP)
    chains = [r.gadgets.chains[v] for v in r.layout.variable_order if r.gadgets.chains[v]]
    if len(chains) > 1 or (chains and len(chains[0]) > 1):
        for p, q in zip(chains, chains[1:] + chains[:1]):
            add(f"{p[-1]}.1", Side.RIGHT, f"{q[0]}.1", Side.BOTTOM)
    info = GadgetInfo(**{**r.gadgets.__dict__, "extra": extra})
    return Reduction(r.formula, r.layout, ClusteredGraph.build(edges, g.clusters, sides), info)


def reduce_free(phi: Nae3SatFormula) -> FreeReduction:
    """Free-sides instance with clusters of size 5 only.

    Every cluster V of the augmented fixed instance becomes a hub H and
    eight rim clusters R0..R7 (R0 top, clockwise; R0, R2, R4, R6 face the
    sides T, R, B, L).  An edge that left V on side s now leaves the rim
    cluster of s, which relays it to the hub vertex standing for its old
    endpoint.  Rim neighbours are joined by one edge, and every rim cluster
    is joined to the hub.
    """
    fixed = _add_extra_edges(reduce_fixed(phi, TRICONNECTED))
    g = fixed.graph
    clusters: Dict[str, Tuple[str, ...]] = {}
    edges: List[Edge] = []
    wheels: Dict[str, Tuple[str, List[str]]] = {}

    def vx(c: str, i: int) -> str:
        return f"{c}.{i}"

    slot: Dict[Tuple[str, Edge], str] = {}
    for c in g.nontrivial_clusters:
        hub = f"{c}~h"
        rim = [f"{c}~r{i}" for i in range(RIM)]
        wheels[c] = (hub, rim)
        for x in [hub, *rim]:
            clusters[x] = tuple(vx(x, i) for i in range(GADGET_SIZE))
        members = g.clusters[c]
        by_side: Dict[Side, List[Edge]] = {s: [] for s in Side}
        for e in g.inter_edges:
            if g.cluster_of(e[0]) == c or g.cluster_of(e[1]) == c:
                by_side[g.side(e, c)].append(e)
        for s in Side:
            r = rim[2 * s]
            if len(by_side[s]) > 3:
                raise AssertionError(f"side {s.name} of {c} carries {len(by_side[s])} edges")
            for t, e in enumerate(by_side[s]):
                u = e[0] if g.cluster_of(e[0]) == c else e[1]
                slot[(c, e)] = vx(r, t)
                edges.append(edge(vx(r, t), vx(hub, members.index(u))))
            if not by_side[s]:
                edges.append(edge(vx(r, 0), vx(hub, 4)))
        for i in range(RIM):
            edges.append(edge(vx(rim[i], 4), vx(rim[(i + 1) % RIM], 3)))
            if i % 2:
                edges.append(edge(vx(rim[i], 0), vx(hub, 3)))
    for e in g.inter_edges:
        a, b = (slot[(g.cluster_of(v), e)] for v in e)
        edges.append(edge(a, b))
    return FreeReduction(phi, fixed, ClusteredGraph.build(edges, clusters), wheels)


def cluster_frame(g: ClusteredGraph) -> nx.Graph:
    f = nx.Graph()
    f.add_nodes_from(g.clusters)
    for u, v in g.inter_edges:
        f.add_edge(g.cluster_of(u), g.cluster_of(v))
    return f


def is_triconnected(f: nx.Graph) -> bool:
    return _triconnected(f)


def incidence_graph(phi: Nae3SatFormula) -> nx.Graph:
    """Variable-clause graph of ``phi`` (simple)."""
    g = nx.Graph()
    g.add_nodes_from(f"v:{v}" for v in phi.variables)
    for j, c in enumerate(phi.clauses):
        g.add_node(f"c:{j}")
        for lit in c:
            g.add_edge(f"c:{j}", f"v:{lit.var}")
    return g


def is_rim_wheel(f: nx.Graph, hub: str, rim: Sequence[str]) -> bool:
    """Whether hub + rim induce a wheel whose rim is the cycle ``rim``."""
    sub = f.subgraph([hub, *rim])
    want = {edge(hub, r) for r in rim} | {edge(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))}
    return {edge(*e) for e in sub.edges} == want


# -- verification ------------------------------------------------------------------


@dataclass
class ReductionReport:
    formula: Nae3SatFormula
    assignment: Optional[Dict[str, bool]]
    verdict: Verdict
    clusters: int

    @property
    def satisfiable(self) -> bool:
        return self.assignment is not None

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.verdict.planar

    def __str__(self) -> str:
        return (
            f"{'PASS' if self.agree else 'FAIL'} nae={'SAT' if self.satisfiable else 'UNSAT'} "
            f"planar={self.verdict.planar} clusters={self.clusters} calls={self.verdict.stats.get('calls')}"
        )


def verify_reduction(phi: Nae3SatFormula, budget: Optional[int] = None) -> ReductionReport:
    from .oracle import oracle_fixed

    r = reduce_fixed(phi)
    v = oracle_fixed(r.graph, budget=budget)
    return ReductionReport(phi, nae_brute(phi), v, len(r.graph.nontrivial_clusters))
