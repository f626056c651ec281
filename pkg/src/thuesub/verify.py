"""Ground-truth checks that a vertex coloring is nonrepetitive.

``verify_general`` walks every maximal simple path of the graph.
``verify_subdivided`` uses the base graph instead: every simple path of a
subdivision reads a factor of one of

  (a) the word of a simple base path, optionally prefixed/suffixed by the
      interior of a base edge that leads back onto the path, or
  (b) a cyclic word of a base cycle, taken at most one full turn,

so checking those words covers all paths without enumerating them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .graphs import (Graph, SubdividedGraph, VertexColoring, enumerate_cycles, enumerate_maximal_paths,
                     enumerate_simple_paths, norm_edge, path_edges)
from .words import SquareWitness, circular_squares, find_square


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class VerificationReport:
    witness: Optional[SquareWitness] = None
    paths_checked: int = 0
    cycles_checked: int = 0
    max_word_length: int = 0

    @property
    def clean(self) -> bool:
        return self.witness is None

    @property
    def verdict(self) -> str:
        return "clean" if self.clean else "witness"

    def square_vertices(self) -> tuple:
        """Vertex ids carrying the square, in order (locus slice of the witness)."""
        w = self.witness
        return tuple(w.context[w.start:w.end])

    def as_dict(self) -> dict:
        d = {"verdict": self.verdict, "paths_checked": self.paths_checked,
             "cycles_checked": self.cycles_checked, "max_word_length": self.max_word_length}
        if self.witness is not None:
            d.update(start=self.witness.start, period=self.witness.period,
                     square_vertices=list(self.square_vertices()))
        return d


def _check_total(g: Graph, c: VertexColoring) -> None:
    if len(c.colors) != g.n:
        raise ValueError(f"coloring has {len(c.colors)} entries for {g.n} vertices")


def verify_general(g: Graph, c: VertexColoring, budget: Optional[int] = None) -> VerificationReport:
    """Check the color word of every maximal simple path (subpaths are factors)."""
    _check_total(g, c)
    rep = VerificationReport()
    for path in enumerate_maximal_paths(g):
        rep.paths_checked += 1
        if budget is not None and rep.paths_checked > budget:
            raise BudgetExceeded(f"more than {budget} maximal paths")
        w = c.along(path)
        rep.max_word_length = max(rep.max_word_length, len(w))
        sq = find_square(w)
        if sq is not None:
            rep.witness = SquareWitness(sq.start, sq.period, context=tuple(path))
            return rep
    return rep


def _interior(sg: SubdividedGraph, tail: int, head: int) -> list[int]:
    return sg.chain(norm_edge(tail, head), tail)[1:-1]


def base_path_loci(sg: SubdividedGraph) -> Iterator[tuple]:
    """Vertex sequences of the type-(a) words, in canonical base-path order."""
    base = sg.base
    adj = base.adjacency()
    for path in enumerate_simple_paths(base):
        on = set(path)
        used = set(path_edges(path))
        v0, vm = path[0], path[-1]
        starts = [x for x in adj[v0] if x in on and norm_edge(x, v0) not in used]
        ends = [y for y in adj[vm] if y in on and norm_edge(vm, y) not in used]
        combos = [(x, y) for x in [None, *starts] for y in [None, *ends]
                  if x is None or y is None or norm_edge(x, v0) != norm_edge(vm, y)]
        # (None, y) is a factor of (x, y) whenever the latter is admissible
        keep = []
        for x, y in combos:
            if x is None and any(x2 is not None and y2 == y for x2, y2 in combos):
                continue
            if y is None and any(y2 is not None and x2 == x for x2, y2 in combos):
                continue
            keep.append((x, y))
        body = [path[0]]
        for a, b in zip(path, path[1:]):
            body.extend(sg.chain(norm_edge(a, b), a)[1:])
        for x, y in keep:
            locus = list(body)
            if x is not None:
                locus = _interior(sg, x, v0) + locus
            if y is not None:
                locus = locus + _interior(sg, vm, y)
            yield tuple(locus)


def cycle_loci(sg: SubdividedGraph) -> Iterator[tuple]:
    """One period of the cyclic vertex sequence around each base cycle."""
    for cyc in enumerate_cycles(sg.base):
        locus = []
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            locus.extend(sg.chain(norm_edge(a, b), a)[:-1])
        yield tuple(locus)


def verify_subdivided(sg: SubdividedGraph, c: VertexColoring, budget: Optional[int] = None) -> VerificationReport:
    _check_total(sg.graph, c)
    rep = VerificationReport()
    for locus in base_path_loci(sg):
        rep.paths_checked += 1
        if budget is not None and rep.paths_checked > budget:
            raise BudgetExceeded(f"more than {budget} base-path words")
        w = c.along(locus)
        rep.max_word_length = max(rep.max_word_length, len(w))
        sq = find_square(w)
        if sq is not None:
            rep.witness = SquareWitness(sq.start, sq.period, context=locus)
            return rep
    for locus in cycle_loci(sg):
        rep.cycles_checked += 1
        if budget is not None and rep.paths_checked + rep.cycles_checked > budget:
            raise BudgetExceeded(f"more than {budget} base-path and cycle words")
        w = c.along(locus)
        rep.max_word_length = max(rep.max_word_length, len(w))
        sq = circular_squares(w, len(w))
        if sq is not None:
            rep.witness = SquareWitness(sq.start, sq.period, context=locus + locus)
            return rep
    return rep
