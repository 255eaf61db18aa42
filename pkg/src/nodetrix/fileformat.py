"""Line-oriented instance files and JSON witnesses.

An instance file looks like::

    nodetrix 1
    model fixed
    vertex a
    vertex b
    vertex x
    cluster A a b
    intra a b
    inter a x L -

Records may appear in any order after the header; ``#`` starts a comment.
``inter u v S T`` gives the side at u's cluster and at v's cluster, ``-``
marking a trivial endpoint.  Free-model files omit the side columns.
Vertices not listed in a ``cluster`` record form a trivial cluster named
after themselves.  :func:`serialize` writes the canonical form: records
grouped by kind, everything sorted lexicographically.
"""

from __future__ import annotations

import json
from typing import Dict, List, Mapping, Optional, Tuple

from .model import ClusteredGraph, Edge, Incidence, Side, Violation, edge, validate
from .verdict import Verdict

HEADER = "nodetrix 1"
FIXED = "fixed"
FREE = "free"


class InstanceSyntaxError(SyntaxError):
    def __init__(self, msg: str, line: int, col: int = 1, text: str = ""):
        super().__init__(f"line {line}, col {col}: {msg}", ("<instance>", line, col, text))
        self.line = line
        self.col = col


class ValidationError(ValueError):
    def __init__(self, violations: List[Violation]):
        super().__init__("; ".join(map(str, violations)))
        self.violations = violations


def _tokens(line: str) -> List[Tuple[str, int]]:
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse(text: str, check: bool = True) -> ClusteredGraph:
    """Parse an instance file.  With ``check`` the result is validated and
    a :class:`ValidationError` lists every broken invariant."""
    lines = text.splitlines()
    body: List[Tuple[int, str, List[Tuple[str, int]]]] = []
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if toks:
            body.append((no, raw, toks))
    if not body:
        raise InstanceSyntaxError("empty instance file", max(len(lines), 1))
    no, raw, toks = body[0]
    if [t for t, _ in toks] != HEADER.split():
        raise InstanceSyntaxError(f"expected header {HEADER!r}", no, toks[0][1], raw)

    model: Optional[str] = None
    vertices: List[str] = []
    clusters: Dict[str, List[str]] = {}
    edges: List[Edge] = []
    sides: Dict[Incidence, Side] = {}
    pending: List[Tuple[int, str, Edge, List[Tuple[str, int]]]] = []
    for no, raw, toks in body[1:]:
        kind, col = toks[0]
        args = toks[1:]

        def need(n: int, exact: bool = True) -> None:
            if len(args) < n or (exact and len(args) > n):
                where = args[n][1] if len(args) > n else len(raw) + 1
                raise InstanceSyntaxError(f"{kind!r} takes {n} argument(s)", no, where, raw)

        if kind == "model":
            need(1)
            if model is not None:
                raise InstanceSyntaxError("model given twice", no, col, raw)
            if args[0][0] not in (FIXED, FREE):
                raise InstanceSyntaxError(f"unknown model {args[0][0]!r}", no, args[0][1], raw)
            model = args[0][0]
        elif kind == "vertex":
            need(1)
            vertices.append(args[0][0])
        elif kind == "cluster":
            need(2, exact=False)
            name = args[0][0]
            if name in clusters:
                raise InstanceSyntaxError(f"cluster {name!r} given twice", no, args[0][1], raw)
            clusters[name] = [t for t, _ in args[1:]]
        elif kind == "intra":
            need(2)
            edges.append(edge(args[0][0], args[1][0]))
        elif kind == "inter":
            if len(args) not in (2, 4):
                raise InstanceSyntaxError("'inter' takes 2 or 4 arguments", no, col, raw)
            e = (args[0][0], args[1][0])
            edges.append(edge(*e))
            pending.append((no, raw, e, args[2:]))
        else:
            raise InstanceSyntaxError(f"unknown record {kind!r}", no, col, raw)
    if model is None:
        raise InstanceSyntaxError("missing model record", body[0][0], 1, body[0][1])

    covered = {v for vs in clusters.values() for v in vs}
    full = {name: tuple(vs) for name, vs in clusters.items()}
    for v in vertices:
        if v not in covered and v not in full:
            full[v] = (v,)
    cluster_of = {v: c for c, vs in full.items() for v in vs}
    for no, raw, (u, v), extra in pending:
        if model == FREE and extra:
            raise InstanceSyntaxError("free model takes no sides", no, extra[0][1], raw)
        if model == FIXED and not extra:
            raise InstanceSyntaxError("fixed model needs two side columns", no, len(raw) + 1, raw)
        for x, (tok, col) in zip((u, v), extra):
            if tok == "-":
                continue
            try:
                s = Side.from_letter(tok) if len(tok) == 1 else None
            except ValueError:
                s = None
            if s is None:
                raise InstanceSyntaxError(f"unknown side {tok!r}", no, col, raw)
            if x not in cluster_of:
                raise InstanceSyntaxError(f"side given for unknown vertex {x!r}", no, col, raw)
            sides[(edge(u, v), cluster_of[x])] = s

    g = ClusteredGraph(tuple(vertices), tuple(edges), full, sides if model == FIXED else None)
    if check:
        problems = validate(g)
        if not problems:
            declared = {edge(u, v) for _, _, (u, v), _ in pending}
            for e in g.edges:
                if (e in declared) != g.is_inter(e):
                    kind = "inter" if e in declared else "intra"
                    problems.append(Violation("record", f"edge {e} declared {kind}"))
        if problems:
            raise ValidationError(problems)
    return g


def serialize(g: ClusteredGraph) -> str:
    model = FREE if g.sides is None else FIXED
    out = [HEADER, f"model {model}"]
    out += [f"vertex {v}" for v in g.vertices]
    for name, members in g.clusters.items():
        if len(members) == 1 and members[0] == name:
            continue
        out.append(" ".join(["cluster", name, *members]))
    out += [f"intra {u} {v}" for u, v in g.intra_edges]
    for e in g.inter_edges:
        cols = [*e]
        if g.sides is not None:
            for x in e:
                c = g.cluster_of(x)
                cols.append("-" if g.is_trivial(c) else g.side(e, c).letter)
        out.append(" ".join(["inter", *cols]))
    return "\n".join(out) + "\n"


def read_instance(path: str, check: bool = True) -> ClusteredGraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), check)


def write_instance(path: str, g: ClusteredGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(g))


def witness_json(g: ClusteredGraph, v: Verdict) -> Dict:
    """Permutations, sides and wheel rotation system of a verdict as plain JSON data."""
    sides: Mapping[Incidence, Side] = v.sides if v.sides is not None else (g.sides or {})
    return {
        "planar": v.planar,
        "algorithm": v.algorithm,
        "permutations": {c: list(p) for c, p in sorted((v.perms or {}).items())},
        "sides": [
            {"edge": list(e), "cluster": c, "side": s.letter} for (e, c), s in sorted(sides.items())
        ],
        "rotation": {x: list(r) for x, r in sorted((v.embedding or {}).items())},
    }


def dump_witness(path: str, g: ClusteredGraph, v: Verdict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(witness_json(g, v), fh, indent=2, sort_keys=True)
        fh.write("\n")


__all__ = [
    "FIXED",
    "FREE",
    "HEADER",
    "InstanceSyntaxError",
    "ValidationError",
    "dump_witness",
    "parse",
    "read_instance",
    "serialize",
    "witness_json",
    "write_instance",
]
