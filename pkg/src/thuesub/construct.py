"""Vertex 3-coloring of a subdivided graph from a nonrepetitive edge coloring.

Every original vertex gets color 0.  The division vertices of an edge e with
k of them, read along the edge orientation, spell

    q . f(c(e)) . p . l_{k-116-2n} . p . f(c(e)) . qbar

where f maps edge colors injectively into an n-good set.  Edges that are
subdivided too much are first cut into gamma segments by promoting gamma-1
division vertices to anchors (color 0); the resulting intermediate graph is
edge-colored by the three-new-colors lift.

The base edge coloring must be square-free along every near-path (see
``graphs.enumerate_near_paths``), not only along simple paths: a subdivision
path may wrap almost fully around a base cycle, and a cycle whose colors
read as a square then yields a square in the vertex coloring.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .goodsets import GoodSet, PoolConfig, build_good_set
from .graphs import (EdgeColoring, Graph, SubdividedGraph, SubdivisionPlan, VertexColoring, lift_coloring_lemma11,
                     nonrepetitive_chromatic_index, norm_edge, search_edge_coloring, subdivide, verify_edge_coloring)
from .nice import LexLeastCache
from .words import P, Q, QBAR, Word, find_square, find_square_naive, mirror

log = logging.getLogger(__name__)

# |q| + |p| on each side of the separator: 2*(19 + 39) = 116
FRAME = 2 * (len(Q) + len(P))
PAPER_MIN_N = 8750


class ConstructionError(ValueError):
    pass


def min_division(n: int) -> int:
    return 4 * n + 216


def max_division(n: int) -> int:
    return 9 * n


def separator_range(n: int) -> range:
    return range(2 * n + 100, 7 * n + 1)


@dataclass
class ConstructionParams:
    n: int
    good_set: GoodSet
    f: Mapping[int, Word]
    lwords: Mapping[int, Word]

    def __post_init__(self):
        if len(set(self.f.values())) != len(self.f):
            raise ConstructionError("color map f is not injective")
        members = set(self.good_set.words)
        for col, w in self.f.items():
            if w not in members:
                raise ConstructionError(f"f({col}) is not in the good set")


@dataclass(frozen=True)
class GammaSplit:
    k: int
    gamma: int
    parts: tuple


def gamma_split(k: int, n: int) -> GammaSplit:
    """Cut k division vertices into gamma segments with gamma-1 anchors between them.

    Picks the smallest gamma for which k-(gamma-1) splits into gamma parts in
    [4n+216, 9n]; parts differ by at most one, larger ones first.
    """
    lo, hi = min_division(n), max_division(n)
    if k < lo:
        raise ConstructionError(f"k={k} below 4n+216={lo}")
    gamma = 1
    while gamma * lo + gamma - 1 <= k:
        total = k - (gamma - 1)
        if gamma * lo <= total <= gamma * hi:
            base, extra = divmod(total, gamma)
            return GammaSplit(k, gamma, tuple([base + 1] * extra + [base] * (gamma - extra)))
        gamma += 1
    raise ConstructionError(f"k={k} cannot be split into segments of length in [{lo}, {hi}] (n={n})")


def edge_word(color: int, k: int, params: ConstructionParams, reversed: bool = False) -> Word:
    n = params.n
    i = k - FRAME - 2 * n
    if i not in separator_range(n):
        raise ConstructionError(f"k={k} gives separator length {i} outside [{2 * n + 100}, {7 * n}]")
    if color not in params.f:
        raise ConstructionError(f"color {color} has no good-set word")
    try:
        l = params.lwords[i]
    except KeyError:
        raise ConstructionError(f"no separator l_{i} available") from None
    fw = params.f[color]
    w = Q + fw + P + l + P + fw + QBAR
    assert len(w) == k
    return mirror(w) if reversed else w


def color_subdivision_lemma10(g: Graph, c: EdgeColoring, plan: SubdivisionPlan, params: ConstructionParams,
                              check_coloring: bool = True) -> tuple[SubdividedGraph, VertexColoring]:
    n = params.n
    lo, hi = min_division(n), max_division(n)
    problems = []
    for e in g.edges:
        k = plan.counts[e]
        if not lo <= k <= hi:
            problems.append(f"edge {e[0]}-{e[1]}: k={k} outside [{lo}, {hi}]")
        elif k - FRAME - 2 * n not in params.good_set.index_set:
            problems.append(f"edge {e[0]}-{e[1]}: separator length {k - FRAME - 2 * n} not certified")
        if c.colors.get(e) not in params.f:
            problems.append(f"edge {e[0]}-{e[1]}: color {c.colors.get(e)} has no good-set word")
    if problems:
        raise ConstructionError("; ".join(problems))
    if check_coloring:
        sq = verify_edge_coloring(g, c, strong=True)
        if sq is not None:
            raise ConstructionError(f"edge coloring is repetitive along walk {sq.context}")
    sg = subdivide(g, plan)
    colors = [0] * sg.graph.n
    for e in g.edges:
        w = edge_word(c.colors[e], plan.counts[e], params)
        for v, x in zip(sg.edge_vertices[e], w):
            colors[v] = x
    return sg, VertexColoring(tuple(colors), 3)


def paper_parameters(pi_prime: int) -> dict:
    """n and c for paper mode; logarithms are natural."""
    x = math.log(2 * pi_prime + 3) / math.log(1.01)
    n = max(PAPER_MIN_N, math.ceil(2 * x))
    c_formula = max(35216, 8 * x + 216)
    return {"n": n, "c": min_division(n), "c_formula": c_formula, "log_term": x}


@dataclass
class PipelineResult:
    subdivided: SubdividedGraph
    coloring: VertexColoring
    good_set: GoodSet
    report: dict = field(default_factory=dict)


def theorem12_pipeline(g: Graph, plan: SubdivisionPlan, mode: str = "desk", n: Optional[int] = None,
                       edge_coloring: Optional[EdgeColoring] = None, lwords: Optional[Mapping[int, Word]] = None,
                       pool: Optional[PoolConfig] = None, jobs: int = 1) -> PipelineResult:
    """Nonrepetitive 3-coloring of subdivide(g, plan); see module docstring."""
    plan.validate(g)
    if edge_coloring is None:
        pi = nonrepetitive_chromatic_index(g, strong=True) if g.edges else 0
        edge_coloring = search_edge_coloring(g, pi, strong=True) if g.edges else EdgeColoring({}, 0)
    else:
        sq = verify_edge_coloring(g, edge_coloring, strong=True)
        if sq is not None:
            raise ConstructionError(f"supplied edge coloring is repetitive along path {sq.context}")
        pi = edge_coloring.used()

    report: dict = {"mode": mode, "pi_prime": pi}
    if mode == "paper":
        pp = paper_parameters(pi)
        n = pp["n"]
        report.update(c_formula=round(pp["c_formula"], 3))
    elif mode == "desk":
        if n is None:
            raise ConstructionError("desk mode needs n")
    else:
        raise ConstructionError(f"unknown mode {mode!r}")
    c = min_division(n)
    report.update(n=n, c=c)
    short = [f"{e[0]}-{e[1]} (k={k})" for e, k in sorted(plan.counts.items()) if k < c]
    if short:
        raise ConstructionError(f"edges subdivided fewer than c={c} times: {', '.join(short)}")

    splits = {e: gamma_split(plan.counts[e], n) for e in g.edges}
    report["gamma"] = {f"{e[0]}-{e[1]}": s.gamma for e, s in sorted(splits.items())}

    # intermediate graph G': gamma-1 anchors per edge, same orientation
    mid_plan = SubdivisionPlan({e: s.gamma - 1 for e, s in splits.items()}, dict(plan.orientation))
    mid, mid_colors = lift_coloring_lemma11(g, edge_coloring, mid_plan)
    gp = mid.graph
    fine_counts, fine_orient = {}, {}
    for e in g.edges:
        tail = plan.orientation[e][0]
        chain = mid.chain(e, tail)
        for (a, b), part in zip(zip(chain, chain[1:]), splits[e].parts):
            fine_counts[norm_edge(a, b)] = part
            fine_orient[norm_edge(a, b)] = (a, b)
    fine_plan = SubdivisionPlan(fine_counts, fine_orient)
    used = sorted(set(mid_colors.colors.values()))
    index_set = frozenset(k - FRAME - 2 * n for k in fine_counts.values())
    report.update(palette_base=edge_coloring.used(), palette_lifted=len(used),
                  index_set=sorted(index_set))

    if lwords is None:
        lwords = LexLeastCache()
    # the naive oracle is far too slow for paper-scale words; the final verifier is the authority
    detector = find_square if mode == "paper" else find_square_naive
    gs = build_good_set(n, max(len(used), 1), index_set, lwords, pool=pool, jobs=jobs, detector=detector)
    params = ConstructionParams(n, gs, dict(zip(used, gs.words)), lwords)
    fine, fine_coloring = color_subdivision_lemma10(gp, mid_colors, fine_plan, params,
                                                    check_coloring=len(gp.edges) <= 40)

    # read the fine coloring back along each original edge
    target = subdivide(g, plan)
    colors = [0] * target.graph.n
    for e in g.edges:
        tail = plan.orientation[e][0]
        walk = []
        chain = mid.chain(e, tail)
        for a, b in zip(chain, chain[1:]):
            walk.extend(fine.chain((a, b), a)[1:])
        inner = walk[:-1]
        assert len(inner) == plan.counts[e]
        for v, x in zip(target.edge_vertices[e], inner):
            colors[v] = fine_coloring.colors[x]
    report.update(good_set_size=len(gs), vertices=target.graph.n)
    return PipelineResult(target, VertexColoring(tuple(colors), 3), gs, report)


# --- coloring document ----------------------------------------------------------
#
#   [report]
#   key = <json value>
#   [vertices]
#   <id> <color> <provenance>

def format_coloring(sg: SubdividedGraph, coloring: VertexColoring, report: Optional[dict] = None) -> str:
    out = ["[report]\n"]
    for key in sorted(report or {}):
        out.append(f"{key} = {json.dumps(report[key], sort_keys=True)}\n")
    out.append("[vertices]\n")
    for v, (col, prov) in enumerate(zip(coloring.colors, sg.provenance)):
        out.append(f"{v} {col} {prov}\n")
    return "".join(out)


def parse_coloring(text: str) -> tuple[VertexColoring, dict]:
    section = None
    report, colors = {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            continue
        if section == "report":
            key, _, val = line.partition("=")
            report[key.strip()] = json.loads(val)
        elif section == "vertices":
            toks = line.split(maxsplit=2)
            if len(toks) < 2:
                raise ValueError(f"line {lineno}: expected '<id> <color> [provenance]'")
            colors[int(toks[0])] = int(toks[1])
        else:
            raise ValueError(f"line {lineno}: outside any section")
    if sorted(colors) != list(range(len(colors))):
        raise ValueError("vertex ids must be 0..N-1")
    cols = tuple(colors[v] for v in range(len(colors)))
    return VertexColoring(cols, max(3, 1 + max(cols, default=0))), report
