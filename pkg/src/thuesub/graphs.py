"""Simple graphs, subdivisions, path/cycle enumeration and nonrepetitive edge colorings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .words import SquareWitness, find_square, lex_least_squarefree

Edge = tuple  # (u, v) with u < v


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple

    def __post_init__(self):
        es = sorted(norm_edge(u, v) for u, v in self.edges)
        if len(set(es)) != len(es):
            raise ValueError("parallel edges")
        for u, v in es:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", tuple(es))

    @classmethod
    def from_edges(cls, edges, n: Optional[int] = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def path_graph(k: int) -> Graph:
    """P_k: k vertices, k-1 edges."""
    return Graph(k, tuple((i, i + 1) for i in range(k - 1)))


def cycle_graph(k: int) -> Graph:
    return Graph(k, tuple(norm_edge(i, (i + 1) % k) for i in range(k)))


def complete_graph(k: int) -> Graph:
    return Graph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


@dataclass(frozen=True)
class SubdivisionPlan:
    """Division-vertex count and orientation (tail, head) for every edge."""

    counts: Mapping[Edge, int]
    orientation: Mapping[Edge, tuple]

    @classmethod
    def uniform(cls, g: Graph, k: int) -> "SubdivisionPlan":
        return cls.from_counts(g, {e: k for e in g.edges})

    @classmethod
    def from_counts(cls, g: Graph, counts: Mapping[Edge, int],
                    orientation: Optional[Mapping[Edge, tuple]] = None) -> "SubdivisionPlan":
        counts = {norm_edge(*e): k for e, k in counts.items()}
        orient = {e: e for e in g.edges}
        for e, o in (orientation or {}).items():
            orient[norm_edge(*e)] = tuple(o)
        plan = cls(counts, orient)
        plan.validate(g)
        return plan

    def validate(self, g: Graph) -> None:
        if set(self.counts) != set(g.edges):
            missing = set(g.edges) - set(self.counts)
            extra = set(self.counts) - set(g.edges)
            raise ValueError(f"plan not total over edges (missing {sorted(missing)}, extra {sorted(extra)})")
        for e, k in self.counts.items():
            if k < 0:
                raise ValueError(f"negative division count on {e}")
            if norm_edge(*self.orientation[e]) != e:
                raise ValueError(f"orientation {self.orientation[e]} does not match edge {e}")


@dataclass(frozen=True)
class Provenance:
    kind: str  # "original" or "division"
    vertex: Optional[int] = None
    edge: Optional[Edge] = None
    index: Optional[int] = None  # 1-based, along the edge orientation

    def __str__(self) -> str:
        if self.kind == "original":
            return f"original {self.vertex}"
        return f"division {self.edge[0]}-{self.edge[1]} {self.index}"


@dataclass(frozen=True)
class SubdividedGraph:
    graph: Graph
    base: Graph
    plan: SubdivisionPlan
    provenance: tuple
    # division vertices of each base edge, tail to head along the orientation
    edge_vertices: Mapping[Edge, tuple] = field(compare=False)

    def chain(self, e: Edge, tail: int) -> list[int]:
        """All vertices of base edge e from endpoint ``tail`` to the other endpoint."""
        e = norm_edge(*e)
        a, b = self.plan.orientation[e]
        inner = list(self.edge_vertices[e])
        if tail == a:
            return [a] + inner + [b]
        if tail == b:
            return [b] + inner[::-1] + [a]
        raise ValueError(f"{tail} is not an endpoint of {e}")


def subdivide(g: Graph, plan: SubdivisionPlan) -> SubdividedGraph:
    plan.validate(g)
    prov = [Provenance("original", vertex=v) for v in range(g.n)]
    edges = []
    edge_vertices = {}
    nxt = g.n
    for e in g.edges:
        a, b = plan.orientation[e]
        k = plan.counts[e]
        ids = tuple(range(nxt, nxt + k))
        for i, v in enumerate(ids, 1):
            prov.append(Provenance("division", edge=e, index=i))
        nxt += k
        chain = [a, *ids, b]
        edges.extend(norm_edge(x, y) for x, y in zip(chain, chain[1:]))
        edge_vertices[e] = ids
    return SubdividedGraph(Graph(nxt, tuple(edges)), g, plan, tuple(prov), edge_vertices)


def contract(sg: SubdividedGraph) -> Graph:
    """Recover the base graph from provenance alone."""
    originals = [i for i, p in enumerate(sg.provenance) if p.kind == "original"]
    edges = {p.edge for p in sg.provenance if p.kind == "division"}
    # edges with zero division vertices survive as direct original-original edges
    for u, v in sg.graph.edges:
        if sg.provenance[u].kind == "original" and sg.provenance[v].kind == "original":
            edges.add(norm_edge(u, v))
    return Graph(len(originals), tuple(sorted(edges)))


def _simple_paths_from(adj, start, allowed=None) -> Iterator[list[int]]:
    """All simple paths leaving ``start`` (DFS order, explicit stack)."""
    path = [start]
    on = {start}
    stack = [iter(adj[start])]
    while stack:
        for w in stack[-1]:
            if w in on or (allowed is not None and not allowed(path[-1], w)):
                continue
            path.append(w)
            on.add(w)
            yield list(path)
            stack.append(iter(adj[w]))
            break
        else:
            stack.pop()
            if len(path) > 1:
                on.discard(path.pop())


def enumerate_simple_paths(g: Graph) -> Iterator[tuple]:
    """Every simple path with at least one edge, once up to reversal, as a vertex tuple."""
    adj = g.adjacency()
    for s in range(g.n):
        for p in _simple_paths_from(adj, s):
            if p[0] < p[-1]:
                yield tuple(p)


def enumerate_maximal_paths(g: Graph) -> Iterator[tuple]:
    """Simple paths that cannot be extended at either end, once up to reversal."""
    adj = g.adjacency()
    for s in range(g.n):
        path = [s]
        on = {s}
        stack = [iter(adj[s])]
        while stack:
            for w in stack[-1]:
                if w in on:
                    continue
                path.append(w)
                on.add(w)
                stack.append(iter(adj[w]))
                break
            else:
                stack.pop()
                tip = path[-1]
                if (len(path) > 1 and path[0] < tip and all(w in on for w in adj[tip])
                        and all(w in on for w in adj[path[0]])):
                    yield tuple(path)
                if len(path) > 1:
                    on.discard(path.pop())
    for v in range(g.n):
        if not adj[v]:
            yield (v,)


def enumerate_cycles(g: Graph) -> Iterator[tuple]:
    """Every simple cycle once up to rotation and reflection.

    A cycle is reported as a vertex tuple starting at its smallest vertex,
    with the second vertex smaller than the last.
    """
    adj = g.adjacency()
    for s in range(g.n):
        for p in _simple_paths_from(adj, s, allowed=lambda a, b, s=s: b > s):
            if len(p) >= 3 and s in adj[p[-1]] and p[1] < p[-1]:
                yield tuple(p)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [norm_edge(a, b) for a, b in zip(path, path[1:])]


@dataclass(frozen=True)
class EdgeColoring:
    colors: Mapping[Edge, int]
    palette: int

    def __post_init__(self):
        object.__setattr__(self, "colors", {norm_edge(*e): c for e, c in self.colors.items()})

    def along(self, path: Sequence[int]) -> tuple:
        return tuple(self.colors[e] for e in path_edges(path))

    def used(self) -> int:
        return len(set(self.colors.values()))


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple
    palette: int

    def along(self, path: Sequence[int]) -> tuple:
        return tuple(self.colors[v] for v in path)


def enumerate_near_paths(g: Graph, adj: Optional[Mapping[int, Sequence[int]]] = None) -> Iterator[tuple]:
    """Walks v0..vk with distinct edges and distinct interior vertices v1..v(k-1).

    The end vertices may land anywhere on the walk (closing a cycle or a
    lollipop).  These are exactly the base walks that simple paths of a
    subdivision project onto when they start and end inside edges.  Each
    walk is produced in both directions; walks that are simple paths are
    included.
    """
    if adj is None:
        adj = g.adjacency()
    for e in g.edges:
        yield e
        yield e[::-1]
    for v in range(g.n):
        for core in [[v]] + list(_simple_paths_from(adj, v)):
            inner = set(path_edges(core))
            first, last = core[0], core[-1]
            for x in adj[first]:
                ex = norm_edge(x, first)
                if ex in inner:
                    continue
                for y in adj[last]:
                    ey = norm_edge(last, y)
                    if ey in inner or ey == ex:
                        continue
                    yield (x, *core, y)


def verify_edge_coloring(g: Graph, c: EdgeColoring, strong: bool = False) -> Optional[SquareWitness]:
    """First square on a simple path's edge colors (context = vertex walk), or None.

    With ``strong`` the check runs over all near-paths (see
    ``enumerate_near_paths``), which additionally covers cycles read from any
    starting edge.
    """
    missing = [e for e in g.edges if e not in c.colors]
    if missing:
        raise ValueError(f"coloring misses edges {missing}")
    walks = enumerate_near_paths(g) if strong else enumerate_simple_paths(g)
    for p in walks:
        sq = find_square(c.along(p))
        if sq is not None:
            return SquareWitness(sq.start, sq.period, context=p)
    return None


def _edge_order(g: Graph) -> list[Edge]:
    """Edges ordered by a smallest-last degeneracy ordering of their endpoints."""
    adj = {v: set(a) for v, a in enumerate(g.adjacency())}
    order = []
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        order.append(v)
        for w in adj.pop(v):
            adj[w].discard(v)
    pos = {v: i for i, v in enumerate(reversed(order))}
    return sorted(g.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))


def search_edge_coloring(g: Graph, max_colors: int, strong: bool = False) -> Optional[EdgeColoring]:
    """Exact backtracking search for a nonrepetitive edge coloring with <= max_colors colors.

    After each assignment only the walks through the new edge, inside the
    already-colored subgraph, are checked.  Colors are tried in ascending
    order and a fresh color is only opened one at a time (palette symmetry).
    ``strong`` asks for square-free colors on every near-path, not only on
    simple paths.
    """
    if max_colors < 1:
        raise ValueError("max_colors must be >= 1")
    order = _edge_order(g)
    colors: dict[Edge, int] = {}
    adj_col: dict[int, list[int]] = {v: [] for v in range(g.n)}

    def paths_through(e: Edge) -> Iterator[list[int]]:
        a, b = e
        # extend from a away from b, and from b away from a, then join
        left = [[a]] + [p for p in _simple_paths_from(adj_col, a) if b not in p]
        for lp in left:
            blocked = set(lp)
            for rp in [[b]] + [p for p in _simple_paths_from(adj_col, b) if a not in p]:
                if blocked.isdisjoint(rp):
                    yield lp[::-1] + rp

    def near_paths_through(e: Edge) -> Iterator[tuple]:
        for p in enumerate_near_paths(g, adj_col):
            if e in path_edges(p):
                yield p

    def ok(e: Edge) -> bool:
        walks = near_paths_through(e) if strong else paths_through(e)
        for p in walks:
            if find_square([colors[x] for x in path_edges(p)]) is not None:
                return False
        return True

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        a, b = e
        adj_col[a].append(b)
        adj_col[b].append(a)
        for col in range(min(used + 1, max_colors)):
            colors[e] = col
            if ok(e) and rec(i + 1, max(used, col + 1)):
                return True
        del colors[e]
        adj_col[a].remove(b)
        adj_col[b].remove(a)
        return False

    if not rec(0, 0):
        return None
    return EdgeColoring(dict(colors), max_colors)


def nonrepetitive_chromatic_index(g: Graph, upper: int = 12, strong: bool = False) -> int:
    for k in range(1 if g.edges else 0, upper + 1):
        if k == 0 or search_edge_coloring(g, k, strong) is not None:
            return k
    raise ValueError(f"no nonrepetitive edge coloring with <= {upper} colors")


def lift_coloring_lemma11(g: Graph, c: EdgeColoring, plan: SubdivisionPlan) -> tuple[SubdividedGraph, EdgeColoring]:
    """Color the subdivision so every path's colors fold back onto a path of g.

    An edge with k parts (k = divisions + 1), read along its orientation, gets
    c(e) for k = 1; c(e), c(e)' for k = 2; otherwise c(e), a square-free
    filler over three fresh colors, c(e).  With palette size m the primed color
    of x is m + x and the filler colors are 2m, 2m+1, 2m+2.
    """
    m = c.palette
    sg = subdivide(g, plan)
    out: dict[Edge, int] = {}
    for e in g.edges:
        tail = plan.orientation[e][0]
        chain = sg.chain(e, tail)
        k = len(chain) - 1
        col = c.colors[e]
        if k == 1:
            seq = [col]
        elif k == 2:
            seq = [col, m + col]
        else:
            seq = [col] + [2 * m + x for x in lex_least_squarefree(k - 2)] + [col]
        for (x, y), s in zip(zip(chain, chain[1:]), seq):
            out[norm_edge(x, y)] = s
    return sg, EdgeColoring(out, 2 * m + 3)


# --- text formats -----------------------------------------------------------

def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for i, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_graph(text: str) -> Graph:
    edges = []
    n = None
    for i, toks in _lines(text):
        if toks[0] == "vertices":
            n = int(toks[1])
            continue
        if len(toks) != 2:
            raise ValueError(f"line {i}: expected 'u v'")
        edges.append((int(toks[0]), int(toks[1])))
    return Graph.from_edges(edges, n)


def format_graph(g: Graph) -> str:
    return f"vertices {g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_plan(text: str, g: Graph) -> SubdivisionPlan:
    counts, orient = {}, {}
    for i, toks in _lines(text):
        if len(toks) not in (3, 4):
            raise ValueError(f"line {i}: expected 'u v k [u->v|v->u]'")
        u, v, k = int(toks[0]), int(toks[1]), int(toks[2])
        e = norm_edge(u, v)
        counts[e] = k
        if len(toks) == 4:
            d = toks[3]
            if d == "u->v":
                orient[e] = (u, v)
            elif d == "v->u":
                orient[e] = (v, u)
            else:
                a, b = (int(x) for x in d.split("->"))
                orient[e] = (a, b)
    return SubdivisionPlan.from_counts(g, counts, orient)


def format_plan(plan: SubdivisionPlan) -> str:
    out = []
    for e in sorted(plan.counts):
        a, b = plan.orientation[e]
        out.append(f"{a} {b} {plan.counts[e]} u->v\n")
    return "".join(out)


def parse_edge_coloring(text: str) -> EdgeColoring:
    palette = None
    colors = {}
    for i, toks in _lines(text):
        if toks[0] == "palette":
            palette = int(toks[1])
            continue
        if len(toks) != 3:
            raise ValueError(f"line {i}: expected 'u v color'")
        colors[norm_edge(int(toks[0]), int(toks[1]))] = int(toks[2])
    if palette is None:
        palette = 1 + max(colors.values(), default=-1)
    return EdgeColoring(colors, palette)


def format_edge_coloring(c: EdgeColoring) -> str:
    return f"palette {c.palette}\n" + "".join(f"{u} {v} {c.colors[(u, v)]}\n" for u, v in sorted(c.colors))
