"""thuesub command line.

Exit codes: 0 ok, 1 square/witness/verification failure, 2 budget exhausted,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .construct import (ConstructionError, format_coloring, parse_coloring, paper_parameters,
                        theorem12_pipeline)
from .goodsets import (PoolExhausted, build_good_set, format_good_set, parse_good_set, parse_index_set,
                       verify_good_set)
from .graphs import (SubdivisionPlan, format_edge_coloring, nonrepetitive_chromatic_index, parse_edge_coloring,
                     parse_graph, parse_plan, search_edge_coloring, subdivide, verify_edge_coloring)
from .morphism import H, spot_check_theorem6, verify_lemma4
from .nice import BudgetExhausted, LexLeastCache, enumerate_nice, lex_least_nice, nice_of_length_via_h
from .verify import BudgetExceeded, verify_general, verify_subdivided
from .words import count_squarefree, find_square, render, word

EXIT_OK, EXIT_WITNESS, EXIT_BUDGET, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74

log = logging.getLogger("thuesub")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def read_text(path) -> str:
    return Path(path).read_text()


def emit(args, data: dict, lines=None) -> None:
    """Print a summary: JSON for --format structured, else the given lines or key: value."""
    if args.format == "structured":
        print(json.dumps(data, sort_keys=True, default=str))
        return
    if lines is None:
        lines = [f"{k}: {v}" for k, v in data.items()]
    for ln in lines:
        print(ln)


# --- words ----------------------------------------------------------------------

def cmd_find_square(args):
    w = word(args.word)
    sq = find_square(w)
    if sq is None:
        emit(args, {"word": render(w), "square": None}, ["square-free"])
        return EXIT_OK
    x = w[sq.start:sq.end]
    emit(args, {"word": render(w), "square": {"start": sq.start, "period": sq.period, "factor": render(x)}},
         [f"square start={sq.start} period={sq.period} factor={render(x)}"])
    return EXIT_WITNESS


def cmd_count_squarefree(args):
    counts = [count_squarefree(n) for n in range(args.max + 1)]
    rows = [{"n": n, "count": c, "exceeds_1.3^n": c > 1.3 ** n} for n, c in enumerate(counts)]
    lines = ["n\tcount\t>1.3^n"] + [f"{r['n']}\t{r['count']}\t{int(r['exceeds_1.3^n'])}" for r in rows]
    if args.plot:
        from .plotting import growth_figure
        growth_figure(counts, args.plot)
        lines.append(f"figure: {args.plot}")
    emit(args, {"counts": rows, "figure": args.plot}, lines)
    return EXIT_OK


# --- morphism -------------------------------------------------------------------

def cmd_images(args):
    w = word(args.word)
    out = []
    for choices, img in H.images(w):
        out.append((choices, render(img)))
        if args.limit and len(out) >= args.limit:
            break
    emit(args, {"word": render(w), "images": [{"choices": list(c), "image": i} for c, i in out]},
         [f"{''.join(map(str, c))}\t{i}" for c, i in out])
    return EXIT_OK


def cmd_sync_facts(args):
    rep = verify_lemma4()
    lines = [f"{f.name}: {'PASS' if f.passed else 'FAIL'} ({f.checked} checks)" for f in rep.facts]
    data = {"passed": rep.passed,
            "facts": [{"name": f.name, "passed": f.passed, "checked": f.checked,
                       "counterexample": f.counterexample} for f in rep.facts]}
    emit(args, data, lines)
    return EXIT_OK if rep.passed else EXIT_WITNESS


def cmd_check_images(args):
    rep = spot_check_theorem6(args.max_len)
    data = {"max_len": args.max_len, "words": rep.words_checked, "images": rep.images_checked,
            "failures": [str(f) for f in rep.failures], "passed": rep.passed}
    emit(args, data)
    return EXIT_OK if rep.passed else EXIT_WITNESS


# --- nice words -----------------------------------------------------------------

def cmd_nice_find(args):
    v = lex_least_nice(args.length, args.budget)
    emit(args, {"length": args.length, "word": render(v) if v else None},
         [render(v) if v else f"no nice word of length {args.length}"])
    return EXIT_OK if v else EXIT_WITNESS


def cmd_nice_enumerate(args):
    ws = enumerate_nice(args.length, args.limit, args.budget)
    emit(args, {"length": args.length, "words": [render(w) for w in ws]}, [render(w) for w in ws])
    return EXIT_OK


def cmd_nice_from_h(args):
    nw = nice_of_length_via_h(args.length)
    emit(args, {"length": args.length, "word": render(nw.word) if nw else None},
         [render(nw.word) if nw else f"no h-image of length {args.length}"])
    return EXIT_OK if nw else EXIT_WITNESS


# --- good sets ------------------------------------------------------------------

def cmd_goodset_build(args):
    ix = parse_index_set(args.index) if args.index else frozenset(range(2 * args.n + 100, 7 * args.n + 1))
    lw = LexLeastCache(budget=args.budget)
    gs = build_good_set(args.n, args.size, ix, lw, jobs=args.jobs)
    text = format_good_set(gs)
    if args.out:
        write_atomic(args.out, text)
    emit(args, {"n": gs.n, "size": len(gs), "index_set": sorted(gs.index_set), "out": args.out,
                "words": [render(w) for w in gs.words]},
         [f"n={gs.n} size={len(gs)} certified={gs.certified}"] + ([f"written: {args.out}"] if args.out else
                                                                 [render(w) for w in gs.words]))
    return EXIT_OK


def cmd_goodset_verify(args):
    gs = parse_good_set(read_text(args.file))
    ok, why = verify_good_set(gs, LexLeastCache(budget=args.budget))
    emit(args, {"ok": ok, "reason": why.reason, "n": gs.n, "size": len(gs)},
         ["good" if ok else f"not good: {why.reason}"])
    return EXIT_OK if ok else EXIT_WITNESS


# --- graphs ---------------------------------------------------------------------

def cmd_edgecolor(args):
    g = parse_graph(read_text(args.graph))
    strong = not args.path_only
    k = nonrepetitive_chromatic_index(g, upper=args.max_colors, strong=strong) if g.edges else 0
    c = search_edge_coloring(g, k, strong=strong)
    text = format_edge_coloring(c)
    if args.out:
        write_atomic(args.out, text)
    emit(args, {"pi_prime": k, "strong": strong, "colors": {f"{u}-{v}": x for (u, v), x in sorted(c.colors.items())},
                "out": args.out},
         [f"pi_prime: {k}", f"strong: {strong}"] + ([] if args.out else text.splitlines()))
    return EXIT_OK


def cmd_verify_edges(args):
    g = parse_graph(read_text(args.graph))
    c = parse_edge_coloring(read_text(args.coloring))
    sq = verify_edge_coloring(g, c, strong=not args.path_only)
    if sq is None:
        emit(args, {"verdict": "clean"}, ["clean"])
        return EXIT_OK
    emit(args, {"verdict": "witness", "walk": list(sq.context), "start": sq.start, "period": sq.period},
         [f"witness walk={' '.join(map(str, sq.context))} start={sq.start} period={sq.period}"])
    return EXIT_WITNESS


# --- coloring / verification ----------------------------------------------------

def _load_instance(args):
    g = parse_graph(read_text(args.graph))
    if args.plan:
        plan = parse_plan(read_text(args.plan), g)
    elif getattr(args, "uniform", None) is not None:
        plan = SubdivisionPlan.uniform(g, args.uniform)
    else:
        raise UsageError("give --plan or --uniform")
    return g, plan


def _color(args):
    g, plan = _load_instance(args)
    ec = parse_edge_coloring(read_text(args.edge_coloring)) if args.edge_coloring else None
    if args.mode == "desk" and args.n is None:
        raise UsageError("--mode desk needs --n")
    res = theorem12_pipeline(g, plan, mode=args.mode, n=args.n, edge_coloring=ec,
                             lwords=LexLeastCache(budget=args.budget), jobs=args.jobs)
    report = dict(res.report)
    if args.goodset_out:
        write_atomic(args.goodset_out, format_good_set(res.good_set))
        report["good_set_file"] = str(args.goodset_out)
    if args.out:
        write_atomic(args.out, format_coloring(res.subdivided, res.coloring, report))
    if args.plot:
        from .plotting import coloring_strip
        coloring_strip(res.subdivided, res.coloring, args.plot)
    return res, report


def cmd_color(args):
    res, report = _color(args)
    data = dict(report, out=args.out, figure=args.plot)
    emit(args, data)
    return EXIT_OK


def _verify(args, sg, coloring):
    if args.mode == "general":
        return verify_general(sg.graph, coloring, budget=args.budget)
    return verify_subdivided(sg, coloring, budget=args.budget)


def cmd_verify(args):
    g, plan = _load_instance(args)
    sg = subdivide(g, plan)
    coloring, _ = parse_coloring(read_text(args.coloring))
    if len(coloring.colors) != sg.graph.n:
        raise UsageError(f"coloring has {len(coloring.colors)} vertices, subdivision has {sg.graph.n}")
    rep = _verify(args, sg, coloring)
    d = rep.as_dict()
    emit(args, d)
    return EXIT_OK if rep.clean else EXIT_WITNESS


def cmd_pipeline(args):
    res, report = _color(args)
    args.mode = "subdivided"
    rep = verify_subdivided(res.subdivided, res.coloring, budget=args.budget)
    data = dict(report, out=args.out, figure=args.plot, verification=rep.as_dict())
    emit(args, data)
    return EXIT_OK if rep.clean else EXIT_WITNESS


# --- suites ---------------------------------------------------------------------

SUITES = ("nice-images", "nice-pairs", "blocks", "block-rotation", "crossval", "greedy-bound", "lift")


def cmd_suite(args):
    from . import suites
    names = SUITES if args.name == "all" else (args.name,)
    results = []
    gs = lw = None
    for name in names:
        t = args.trials
        if name in ("blocks", "block-rotation") and gs is None:
            lw = LexLeastCache(budget=args.budget)
            ix = parse_index_set(args.index) if args.index else frozenset(range(2 * args.n + 100, 2 * args.n + 105))
            gs = build_good_set(args.n, args.size, ix, lw, jobs=args.jobs)
        if name == "nice-images":
            r = suites.nice_images_suite(t or 100, args.seed)
        elif name == "nice-pairs":
            r = suites.nice_pairs_suite(args.length, t or 20)
        elif name == "blocks":
            r = suites.block_suite(gs, lw, t or 500, args.seed)
        elif name == "block-rotation":
            r = suites.block_rotation_suite(gs, lw, t or 500, args.seed)
        elif name == "crossval":
            r = suites.crossval_suite(t or 100, args.seed)
        elif name == "greedy-bound":
            r = suites.greedy_bound_suite(t or 100, args.seed)
        else:
            r = suites.lift_suite(t or 50, args.seed, strong=not args.path_only)
        results.append(r)
    data = {r.name: {"passed": r.passed, "trials": r.trials, "failures": len(r.failures), **r.info}
            for r in results}
    # timings are left out of the structured form so it stays reproducible
    emit(args, data, [r.line() for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_WITNESS


def cmd_params(args):
    emit(args, paper_parameters(args.pi_prime))
    return EXIT_OK


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=None, help="node/path budget (exit 2 when exhausted)")
    common.add_argument("-v", "--verbose", action="store_true")

    # common options live on the leaf parsers only: argparse lets subparser
    # defaults overwrite values parsed at the top level
    ap = Parser(prog="thuesub", description="Nonrepetitive 3-colorings of subdivided graphs.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=Parser)

    def leaf(parent, name, func, help=None):
        p = parent.add_parser(name, help=help, parents=[common])
        p.set_defaults(func=func)
        return p

    w = sub.add_parser("words", help="square detection and counting").add_subparsers(dest="sub", required=True)
    p = leaf(w, "find-square", cmd_find_square)
    p.add_argument("word")
    p = leaf(w, "count-squarefree", cmd_count_squarefree)
    p.add_argument("--max", type=int, default=12)
    p.add_argument("--plot", help="write a growth figure to this file")

    m = sub.add_parser("morphism", help="the branching morphism h").add_subparsers(dest="sub", required=True)
    p = leaf(m, "images", cmd_images)
    p.add_argument("word")
    p.add_argument("--limit", type=int, default=0)
    leaf(m, "lemma4", cmd_sync_facts, "exhaustive anchor facts for h")
    p = leaf(m, "check-th6", cmd_check_images, "images of short square-free words are square-free")
    p.add_argument("--max-len", type=int, default=5)

    l4 = sub.add_parser("lemma4", help="alias of 'morphism lemma4'").add_subparsers(dest="sub", required=True)
    leaf(l4, "verify", cmd_sync_facts)

    nc = sub.add_parser("nice", help="nice words").add_subparsers(dest="sub", required=True)
    p = leaf(nc, "find", cmd_nice_find, "lexicographically least nice word")
    p.add_argument("--length", type=int, required=True)
    p = leaf(nc, "enumerate", cmd_nice_enumerate)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--limit", type=int, default=20)
    p = leaf(nc, "from-h", cmd_nice_from_h, "nice word built as an image under h")
    p.add_argument("--length", type=int, required=True)

    gs = sub.add_parser("goodset", help="n-good sets").add_subparsers(dest="sub", required=True)
    p = leaf(gs, "build", cmd_goodset_build)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--index", help="separator lengths, e.g. '188..192,200' (default: the full range)")
    p.add_argument("--out")
    p = leaf(gs, "verify", cmd_goodset_verify)
    p.add_argument("file")

    gr = sub.add_parser("graph", help="edge colorings of base graphs").add_subparsers(dest="sub", required=True)
    p = leaf(gr, "edgecolor", cmd_edgecolor, "exact nonrepetitive edge coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-colors", type=int, default=12)
    p.add_argument("--path-only", action="store_true", help="only simple paths, not closed walks")
    p.add_argument("--out")
    p = leaf(gr, "verify-edges", cmd_verify_edges)
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--path-only", action="store_true")

    def instance(p):
        p.add_argument("--graph", required=True)
        p.add_argument("--plan")
        p.add_argument("--uniform", type=int, help="subdivide every edge this many times instead of --plan")

    def coloring_opts(p):
        instance(p)
        p.add_argument("--mode", choices=("desk", "paper"), default="desk")
        p.add_argument("--n", type=int)
        p.add_argument("--edge-coloring", help="base edge coloring to use (re-verified)")
        p.add_argument("--out")
        p.add_argument("--goodset-out")
        p.add_argument("--plot", help="write an edge color-strip figure to this file")

    coloring_opts(leaf(sub, "color", cmd_color, "3-color a subdivision"))
    p = leaf(sub, "verify", cmd_verify, "check a vertex coloring for squares")
    instance(p)
    p.add_argument("--coloring", required=True)
    p.add_argument("--mode", choices=("general", "subdivided"), default="subdivided")
    coloring_opts(leaf(sub, "pipeline", cmd_pipeline, "color, then verify"))

    p = leaf(sub, "suite", cmd_suite, "seeded randomized property suites")
    p.add_argument("name", choices=SUITES + ("all",))
    p.add_argument("--trials", type=int)
    p.add_argument("--n", type=int, default=44, help="word length for the good set of blocks/block-rotation")
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--index")
    p.add_argument("--length", type=int, default=30, help="nice-word length for nice-pairs")
    p.add_argument("--path-only", action="store_true")

    p = leaf(sub, "params", cmd_params, "paper-mode n and c for a given edge index")
    p.add_argument("--pi-prime", type=int, required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExhausted, BudgetExceeded) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PoolExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WITNESS
    except OSError as exc:
        print(f"io: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
