"""Seeded randomized property suites.

Each suite returns a SuiteResult; ``failures`` holds enough of each failing
trial to reproduce it.  Same (seed, arguments) gives the same trials.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .goodsets import GoodSet, block, greedy_independent_set, block_word, block_rotation_word
from .graphs import (Graph, SubdivisionPlan, VertexColoring, lift_coloring_lemma11,
                     nonrepetitive_chromatic_index, norm_edge, search_edge_coloring, subdivide,
                     verify_edge_coloring)
from .morphism import H
from .nice import enumerate_nice, is_nice
from .verify import cycle_loci, verify_general, verify_subdivided
from .words import P, Word, find_square, is_squarefree, render


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.trials > 0 and not self.failures

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.info.items())
        return (f"{self.name}: {'PASS' if self.passed else 'FAIL'} trials={self.trials} "
                f"failures={len(self.failures)} seconds={self.seconds:.2f}{extra}")


def random_squarefree(rnd: random.Random, k: int, alphabet: int, prefix: Sequence[int] = ()) -> list:
    """Uniform-ish random square-free word: random extension with restarts."""
    while True:
        w = list(prefix)
        while len(w) < len(prefix) + k:
            opts = [c for c in range(alphabet) if is_squarefree(w + [c])]
            if not opts:
                break
            w.append(rnd.choice(opts))
        if len(w) == len(prefix) + k:
            return w[len(prefix):]


def nice_images_suite(trials: int = 100, seed: int = 0, min_len: int = 4, max_len: int = 12) -> SuiteResult:
    """Random images of 0.w.0 under h, w admissible (10.w.01 square-free), must be nice."""
    rnd = random.Random(seed)
    res = SuiteResult("nice-images")
    t0 = time.perf_counter()
    for _ in range(trials):
        while True:
            w = random_squarefree(rnd, rnd.randint(min_len, max_len), 3)
            if is_squarefree([1, 0] + w + [0, 1]):
                break
        src = (0, *w, 0)
        choices = [rnd.randint(0, 1) for _ in src]
        v = H.apply(src, choices)
        res.trials += 1
        if not is_nice(v)[0]:
            res.failures.append((render(w), tuple(choices)))
    res.seconds = time.perf_counter() - t0
    return res


def nice_pairs_suite(length: int = 30, count: int = 20) -> SuiteResult:
    """p.u.p.v.p square-free for all distinct pairs among the first ``count`` nice words."""
    res = SuiteResult("nice-pairs", info={"length": length})
    t0 = time.perf_counter()
    words = enumerate_nice(length, count)
    res.info["words"] = len(words)
    for u in words:
        for v in words:
            if u == v:
                continue
            res.trials += 1
            sq = find_square(P + u + P + v + P)
            if sq is not None:
                res.failures.append((render(u), render(v), sq))
    res.seconds = time.perf_counter() - t0
    return res


def _block_sample(rnd, gs, lwords, max_k, min_k=1, rotation=False):
    f = list(gs.words)
    ix = sorted(gs.index_set)
    while True:
        w = random_squarefree(rnd, rnd.randint(min_k, max_k), len(f))
        if not rotation or is_squarefree(w[1:] + w[:1]):
            break
    seps = [lwords[rnd.choice(ix)] for _ in w]
    rev = [rnd.random() < 0.5 for _ in w]
    return f, w, seps, rev


def block_suite(gs: GoodSet, lwords: Mapping[int, Word], trials: int = 500, seed: int = 0,
                 max_k: int = 8) -> SuiteResult:
    """p.X_1.p ... X_k.p square-free for random square-free w, separators and mirror bits."""
    rnd = random.Random(seed)
    res = SuiteResult("blocks")
    t0 = time.perf_counter()
    for _ in range(trials):
        f, w, seps, rev = _block_sample(rnd, gs, lwords, max_k)
        res.trials += 1
        sq = find_square(block_word(f, w, seps, rev))
        if sq is not None:
            res.failures.append((w, [len(l) for l in seps], rev, sq))
    res.seconds = time.perf_counter() - t0
    return res


def block_rotation_suite(gs: GoodSet, lwords: Mapping[int, Word], trials: int = 500, seed: int = 0,
                    max_k: int = 8) -> SuiteResult:
    """The cyclic variant: w and its rotation square-free, first block split at random."""
    rnd = random.Random(seed)
    res = SuiteResult("block-rotation")
    t0 = time.perf_counter()
    for _ in range(trials):
        f, w, seps, rev = _block_sample(rnd, gs, lwords, max_k, min_k=2, rotation=True)
        split = rnd.randint(0, len(block(f[w[0]], seps[0], rev[0])) + len(P))
        res.trials += 1
        sq = find_square(block_rotation_word(f, w, seps, rev, split))
        if sq is not None:
            res.failures.append((w, [len(l) for l in seps], rev, split, sq))
    res.seconds = time.perf_counter() - t0
    return res


def random_graph(rnd: random.Random, max_vertices: int, density: float = 0.6, min_vertices: int = 2) -> Graph:
    """Random simple graph with at least one edge."""
    n = rnd.randint(min_vertices, max_vertices)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    while True:
        es = [e for e in pairs if rnd.random() < density]
        if es:
            return Graph.from_edges(es, n)


def random_plan(rnd: random.Random, g: Graph, max_k: int, min_k: int = 0) -> SubdivisionPlan:
    counts = {e: rnd.randint(min_k, max_k) for e in g.edges}
    orient = {e: (e if rnd.random() < 0.5 else e[::-1]) for e in g.edges}
    return SubdivisionPlan.from_counts(g, counts, orient)


def crossval_suite(trials: int = 100, seed: int = 0, max_vertices: int = 4, max_k: int = 8) -> SuiteResult:
    """verify_subdivided and verify_general must return the same verdict."""
    rnd = random.Random(seed)
    res = SuiteResult("crossval")
    clean = 0
    t0 = time.perf_counter()
    for _ in range(trials):
        g = random_graph(rnd, max_vertices, 0.7)
        sg = subdivide(g, random_plan(rnd, g, max_k))
        palette = rnd.choice([3, 4, 5])
        adj = sg.graph.adjacency()
        cols: list = []
        # avoid equal neighbours on earlier vertices so both verdicts occur often
        for v in range(sg.graph.n):
            opts = [c for c in range(palette) if all(cols[u] != c for u in adj[v] if u < v)]
            cols.append(rnd.choice(opts or list(range(palette))))
        c = VertexColoring(tuple(cols), palette)
        a = verify_subdivided(sg, c).clean
        b = verify_general(sg.graph, c).clean
        res.trials += 1
        clean += b
        if a != b:
            res.failures.append((g.edges, sg.plan.counts, tuple(cols), a, b))
    res.info["clean"] = clean
    res.seconds = time.perf_counter() - t0
    return res


def greedy_bound_suite(trials: int = 100, seed: int = 0, max_vertices: int = 20) -> SuiteResult:
    """Greedy independent set has at least ceil(|V|/(1+avg degree)) vertices."""
    rnd = random.Random(seed)
    res = SuiteResult("greedy-bound")
    t0 = time.perf_counter()
    for _ in range(trials):
        n = rnd.randint(1, max_vertices)
        dens = rnd.random()
        adj = {v: set() for v in range(n)}
        for i in range(n):
            for j in range(i + 1, n):
                if rnd.random() < dens:
                    adj[i].add(j)
                    adj[j].add(i)
        m = sum(map(len, adj.values())) // 2
        bound = math.ceil(n / (1 + 2 * m / n) - 1e-9)
        got = greedy_independent_set(adj)
        res.trials += 1
        independent = all(u not in adj[v] for u in got for v in got)
        if len(got) < bound or not independent:
            res.failures.append((n, m, len(got), bound))
    res.seconds = time.perf_counter() - t0
    return res


def lift_suite(trials: int = 50, seed: int = 0, max_vertices: int = 6, max_k: int = 6,
               strong: bool = True) -> SuiteResult:
    """Lifted edge colorings of random plans stay nonrepetitive.

    With ``strong`` the base coloring is an exact strong coloring and the lift
    is checked in the strong sense too; otherwise both are path-only.
    """
    rnd = random.Random(seed)
    res = SuiteResult("lift", info={"strong": strong})
    t0 = time.perf_counter()
    for _ in range(trials):
        g = random_graph(rnd, max_vertices, 0.5)
        k = nonrepetitive_chromatic_index(g, strong=strong)
        c = search_edge_coloring(g, k, strong=strong)
        plan = random_plan(rnd, g, max_k)
        sg, lifted = lift_coloring_lemma11(g, c, plan)
        res.trials += 1
        sq = verify_edge_coloring(sg.graph, lifted, strong=strong)
        if sq is not None or lifted.used() > 2 * k + 3:
            res.failures.append((g.edges, c.colors, plan.counts, sq))
    res.seconds = time.perf_counter() - t0
    return res


def flip_suite(sg, coloring: VertexColoring, samples: int = 10, seed: int = 0) -> SuiteResult:
    """Change random division vertices to another color; each must yield a witness."""
    rnd = random.Random(seed)
    res = SuiteResult("flip")
    t0 = time.perf_counter()
    division = [v for v, pv in enumerate(sg.provenance) if pv.kind == "division"]
    for v in rnd.sample(division, min(samples, len(division))):
        cols = list(coloring.colors)
        u = rnd.choice([x for x in range(coloring.palette) if x != cols[v]])
        cols[v] = u
        rep = verify_subdivided(sg, VertexColoring(tuple(cols), coloring.palette))
        res.trials += 1
        if rep.clean:
            res.failures.append((v, u))
        else:
            w = rep.witness
            x = VertexColoring(tuple(cols), coloring.palette).along(rep.square_vertices())
            if x[:w.period] != x[w.period:]:
                res.failures.append((v, u, "witness does not re-check"))
    res.seconds = time.perf_counter() - t0
    return res


def cycle_split_suite(sg, coloring: VertexColoring, samples: int = 50, seed: int = 0,
                      edge: Optional[tuple] = None) -> SuiteResult:
    """Split one edge word a|b at random and check b.(rest of the cycle).a for squares."""
    rnd = random.Random(seed)
    res = SuiteResult("cycle-split")
    t0 = time.perf_counter()
    e = norm_edge(*(edge or sg.base.edges[0]))
    inner = set(sg.edge_vertices[e])
    locus = next((cyc for cyc in cycle_loci(sg) if inner <= set(cyc)), None)
    if locus is None:
        res.info["error"] = "edge lies on no cycle"
        res.seconds = time.perf_counter() - t0
        return res
    # cycle loci start at an original vertex, so the edge's division vertices are contiguous;
    # rotate the cycle to start with them
    first = min(locus.index(v) for v in inner)
    rot = locus[first:] + locus[:first]
    k = len(inner)
    for _ in range(samples):
        s = rnd.randint(1, k - 1) if k > 1 else 0
        a, b = rot[:s], rot[s:]
        w = coloring.along(b + a)
        res.trials += 1
        sq = find_square(w)
        if sq is not None:
            res.failures.append((s, sq))
    res.info["cycle_length"] = len(rot)
    res.seconds = time.perf_counter() - t0
    return res
