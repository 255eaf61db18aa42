"""Command line entry point.

Exit codes of ``test`` and ``oracle``: 0 planar, 1 not planar, 2 budget
exceeded, 3 bad input or conflicting options.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time
from typing import Optional, Sequence

from . import fileformat
from .decomposition.spq import is_partial_2_tree
from .fileformat import InstanceSyntaxError, ValidationError
from .generate import FRAME_SHAPES, random_clustered_graph, sp_chain, wheel_instance
from .hardness import FormulaSyntaxError, parse_formula, reduce_fixed, reduce_free
from .k2 import test_k2
from .layout import audit, layout_nodetrix
from .model import ClusteredGraph, frame, light_reduce, validate
from .oracle import accepting_permutations, oracle_fixed, oracle_free, wheel_embedding
from .render import render_png, write_svg
from .sptester import test_partial_2_tree
from .verdict import BudgetExceeded, Verdict

EXIT_PLANAR, EXIT_NONPLANAR, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3
ALGORITHMS = ("auto", "k2", "sp", "oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "budget exceeded"
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def sp_frame_ok(g: ClusteredGraph) -> bool:
    f = frame(light_reduce(g))
    return is_partial_2_tree(f.vertices, f.edges)


def choose_algorithm(g: ClusteredGraph) -> str:
    if g.sides is None:
        return "oracle"
    if g.max_cluster_size <= 2:
        return "k2"
    if sp_frame_ok(g):
        return "sp"
    return "oracle"


def run_test(g: ClusteredGraph, algorithm: str = "auto", budget: Optional[int] = None) -> Verdict:
    """Dispatch to one tester.  Raises BudgetExceeded or UsageError."""
    if algorithm == "auto":
        algorithm = choose_algorithm(g)
    if algorithm in ("k2", "sp") and g.sides is None:
        raise UsageError(f"--algorithm {algorithm} needs fixed sides")
    if algorithm == "k2":
        if g.max_cluster_size > 2:
            raise UsageError("--algorithm k2 needs clusters of size at most 2")
        return test_k2(g)
    if algorithm == "sp":
        if not sp_frame_ok(g):
            raise UsageError("--algorithm sp needs a partial 2-tree frame")
        v = test_partial_2_tree(light_reduce(g))
        v.sides = g.sides
        return v
    if g.sides is None:
        return oracle_free(g, budget)
    return oracle_fixed(g, budget)


def _load(path: str) -> ClusteredGraph:
    try:
        return fileformat.read_instance(path)
    except (InstanceSyntaxError, ValidationError, OSError) as err:
        raise UsageError(f"{path}: {err}") from None


def _fixed(g: ClusteredGraph, v: Verdict) -> ClusteredGraph:
    return g if v.sides is None else g.with_sides(v.sides)


def _outputs(g: ClusteredGraph, v: Verdict, args) -> None:
    if not v.planar:
        return
    gf = _fixed(g, v)
    if v.embedding is None and v.perms is not None:
        v.embedding = wheel_embedding(gf, v.perms)
    if args.witness:
        fileformat.dump_witness(args.witness, gf, v)
    if args.render or args.png:
        layout = layout_nodetrix(gf, v.perms or {})
        problems = audit(layout)
        if problems:
            print(f"warning: layout audit found {len(problems)} conflicts", file=sys.stderr)
        if args.render:
            write_svg(args.render, layout)
        if args.png:
            render_png(layout, args.png)


def _describe(v: Verdict) -> str:
    word = "planar" if v.planar else "not planar"
    out = [f"{word} ({v.algorithm})"]
    if v.planar and v.perms:
        for c, p in sorted(v.perms.items()):
            out.append(f"  {c}: {' '.join(p)}")
    if v.detail:
        out.append(f"  {v.detail}")
    return "\n".join(out)


def cmd_validate(args) -> int:
    try:
        g = fileformat.read_instance(args.file, check=False)
    except (InstanceSyntaxError, OSError) as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    problems = validate(g)
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {len(g.vertices)} vertices, {len(g.nontrivial_clusters)} non-trivial clusters")
    return 1 if problems else 0


def cmd_test(args) -> int:
    if args.budget is not None and args.algorithm in ("k2", "sp"):
        raise UsageError(f"--budget only applies to the oracle, not --algorithm {args.algorithm}")
    if args.render and args.witness and os.path.abspath(args.render) == os.path.abspath(args.witness):
        raise UsageError("--render and --witness name the same file")
    g = _load(args.file)
    try:
        v = run_test(g, args.algorithm, args.budget)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}")
        return EXIT_BUDGET
    print(_describe(v))
    _outputs(g, v, args)
    return EXIT_PLANAR if v.planar else EXIT_NONPLANAR


def cmd_oracle(args) -> int:
    g = _load(args.file)
    if args.free:
        g = g.forget_sides()
    try:
        if args.count:
            if g.sides is None:
                raise UsageError("--count needs fixed sides")
            found = accepting_permutations(g, args.budget)
            print(len(found))
            return EXIT_PLANAR if found else EXIT_NONPLANAR
        v = oracle_free(g, args.budget) if g.sides is None else oracle_fixed(g, args.budget)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}")
        return EXIT_BUDGET
    print(_describe(v))
    _outputs(g, v, args)
    return EXIT_PLANAR if v.planar else EXIT_NONPLANAR


def _write(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_reduce(args) -> int:
    try:
        with open(args.formula, encoding="utf-8") as fh:
            phi = parse_formula(fh.read())
    except (FormulaSyntaxError, OSError) as err:
        raise UsageError(str(err)) from None
    g = reduce_fixed(phi).graph if args.model == "fixed" else reduce_free(phi).graph
    _write(fileformat.serialize(g), args.output)
    return 0


def cmd_gen_random(args) -> int:
    rng = random.Random(args.seed)
    if args.frame == "chain":
        g = sp_chain(rng, args.n, args.k)
    elif args.frame == "wheel":
        g = wheel_instance(rng, args.n, args.k)
    else:
        g = random_clustered_graph(
            rng, args.n, args.k, shape=args.frame, light=not args.nonlight, max_nontrivial=args.max_nontrivial
        )
    if args.free:
        g = g.forget_sides()
    _write(fileformat.serialize(g), args.output)
    return 0


def cmd_render(args) -> int:
    g = _load(args.file)
    try:
        v = run_test(g, args.algorithm, args.budget)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}")
        return EXIT_BUDGET
    if not v.planar:
        print(_describe(v))
        return EXIT_NONPLANAR
    args.render, args.witness = args.output, None
    _outputs(g, v, args)
    print(f"wrote {args.output}")
    return EXIT_PLANAR


def cmd_report(args) -> int:
    """Scaling of the partial-2-tree tester on planar diamond chains: a
    CSV table plus a log-log plot."""
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    os.makedirs(args.out, exist_ok=True)
    rows = []
    for n in args.sizes:
        best = float("inf")
        for rep in range(args.repeat):
            g = sp_chain(random.Random(args.seed + rep), n, args.k)
            t = time.perf_counter()
            v = test_partial_2_tree(g)
            best = min(best, time.perf_counter() - t)
        rows.append((n, len(g.vertices), len(g.edges), int(v.planar), best))
    csv_path = os.path.join(args.out, "scaling.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["frame_nodes", "vertices", "edges", "planar", "seconds"])
        for r in rows:
            w.writerow([*r[:4], f"{r[4]:.6f}"])
    fig = Figure(figsize=(5, 3.5))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    ns = [r[0] for r in rows]
    ts = [r[4] for r in rows]
    ax.loglog(ns, ts, "o-", color="#33506e", label="measured")
    if ts:
        ax.loglog(ns, [ts[0] * n / ns[0] for n in ns], "--", color="0.6", label="linear")
    ax.set_xlabel("frame nodes")
    ax.set_ylabel("seconds")
    ax.legend(frameon=False)
    fig.tight_layout()
    png_path = os.path.join(args.out, "scaling.png")
    fig.savefig(png_path, dpi=150)
    print("frame_nodes,seconds")
    for r in rows:
        print(f"{r[0]},{r[4]:.4f}")
    print(f"wrote {csv_path} and {png_path}")
    return 0


def _common_test_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--budget", type=int, default=None, help="oracle call budget (default: $NTP_BUDGET or 10^6)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nodetrix", description="NodeTrix planarity of flat clustered graphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("test", help="decide NodeTrix planarity")
    p.add_argument("file")
    _common_test_flags(p)
    p.add_argument("--render", metavar="SVG")
    p.add_argument("--png", metavar="PNG")
    p.add_argument("--witness", metavar="JSON")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("oracle", help="exhaustive search")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--free", action="store_true", help="ignore the sides in the file")
    p.add_argument("--count", action="store_true", help="count accepting permutation assignments")
    p.add_argument("--render", metavar="SVG")
    p.add_argument("--png", metavar="PNG")
    p.add_argument("--witness", metavar="JSON")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce-nae3sat", help="instance from an NAE3SAT formula")
    p.add_argument("formula")
    p.add_argument("--model", choices=("fixed", "free"), default="fixed")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen-random", help="seeded random instance")
    p.add_argument("--n", type=int, default=8, help="frame nodes")
    p.add_argument("--k", type=int, default=3, help="largest cluster size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--frame", choices=(*FRAME_SHAPES, "chain", "wheel"), default="partial2tree")
    p.add_argument("--max-nontrivial", type=int, default=None)
    p.add_argument("--nonlight", action="store_true", help="allow edges between non-trivial clusters")
    p.add_argument("--free", action="store_true", help="drop the side assignment")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("render", help="draw a planar instance")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, metavar="SVG")
    p.add_argument("--png", metavar="PNG")
    _common_test_flags(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", help="scaling table and plot for the partial-2-tree tester")
    p.add_argument("--out", default="report")
    p.add_argument("--sizes", type=int, nargs="+", default=[200, 400, 800, 1600])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"nodetrix: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
