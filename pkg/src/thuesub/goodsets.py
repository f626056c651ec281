"""n-good sets: mirror-free sets of nice words that never combine into squares.

Certification is done over an explicit index set of separator lengths; the
separators l_i come from a provider mapping i -> l_i (usually a
``LexLeastCache``).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .nice import enumerate_nice, nice_of_length_via_h
from .words import P, Q, QBAR, SquareWitness, Word, find_square, find_square_naive, mirror, occurrences, render, word

log = logging.getLogger(__name__)

FAMILIES = ("u.v.l", "ubar.v.l", "u.vbar.lbar", "ubar.vbar.lbar")


class PoolExhausted(RuntimeError):
    pass


class MissingSeparator(KeyError):
    pass


@dataclass
class GoodSet:
    n: int
    words: tuple
    index_set: frozenset
    certified: bool = False

    def __post_init__(self):
        self.words = tuple(sorted(tuple(w) for w in self.words))
        self.index_set = frozenset(self.index_set)

    def __len__(self) -> int:
        return len(self.words)


def separator(lwords: Mapping[int, Word], i: int) -> Word:
    try:
        return lwords[i]
    except KeyError:
        raise MissingSeparator(f"no l_{i} available") from None


def family_word(family: int, u: Word, v: Word, l: Word) -> Word:
    """One of the four forbids words, trailing p included."""
    uu = mirror(u) if family in (1, 3) else u
    vv = mirror(v) if family in (2, 3) else v
    ll = mirror(l) if family in (2, 3) else l
    return P + uu + P + vv + P + ll + P


def forbids(u: Sequence[int], v: Sequence[int], index_set: Iterable[int],
            lwords: Mapping[int, Word], detector: Callable = find_square):
    """Whether u forbids v; returns (flag, (family name, i, witness) or None)."""
    u, v = tuple(u), tuple(v)
    if u == v:
        raise ValueError("forbids is only defined for u != v")
    if len(u) != len(v):
        raise ValueError("u and v must have equal length")
    for i in sorted(index_set):
        l = separator(lwords, i)
        for fam in range(4):
            sq = detector(family_word(fam, u, v, l))
            if sq is not None:
                return True, (FAMILIES[fam], i, sq)
    return False, None


def greedy_independent_set(adj: Mapping[Hashable, set], key: Callable = lambda x: x) -> list:
    """Repeatedly take a minimum-degree vertex and delete its closed neighbourhood.

    Ties go to the smallest ``key``.  The result has at least |V|/(1+d) vertices,
    d the average degree.
    """
    live = {v: set(nb) for v, nb in adj.items()}
    for v, nb in live.items():
        nb.discard(v)
    chosen = []
    while live:
        v = min(live, key=lambda x: (len(live[x]), key(x)))
        chosen.append(v)
        gone = live[v] | {v}
        for x in gone:
            live.pop(x, None)
        for nb in live.values():
            nb -= gone
    return chosen


@dataclass
class PoolConfig:
    limit: Optional[int] = None  # initial enumeration size; default 2*target+4
    max_limit: int = 4096
    grow: bool = True
    include_h: bool = True


def candidate_pool(n: int, index_set: Iterable[int], lwords: Mapping[int, Word], limit: int,
                   include_h: bool = True) -> list[Word]:
    """Nice words of length n, minus prefixes/suffixes of separators, one per mirror pair."""
    words = list(enumerate_nice(n, limit))
    if include_h:
        hw = nice_of_length_via_h(n) if n >= 144 else None
        if hw is not None and hw.word not in words:
            words.append(hw.word)
    seps = [separator(lwords, i) for i in sorted(index_set)]
    keep = set()
    for w in words:
        if any(l[:n] == w or l[-n:] == w for l in seps):
            continue
        keep.add(w)
    pool = sorted(w for w in keep if not (mirror(w) in keep and mirror(w) < w))
    return pool


def _pair_job(args):
    u, v, index_set, lwords = args
    a, _ = forbids(u, v, index_set, lwords)
    b, _ = forbids(v, u, index_set, lwords)
    return a or b


def conflict_graph(pool: Sequence[Word], index_set, lwords, jobs: int = 1) -> dict:
    pairs = [(pool[i], pool[j]) for i in range(len(pool)) for j in range(i + 1, len(pool))]
    lw = {i: separator(lwords, i) for i in index_set}
    work = [(u, v, frozenset(index_set), lw) for u, v in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            flags = list(ex.map(_pair_job, work, chunksize=8))
    else:
        flags = [_pair_job(w) for w in work]
    adj = {w: set() for w in pool}
    for (u, v), bad in zip(pairs, flags):
        if bad:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def build_good_set(n: int, target_size: int, index_set: Iterable[int], lwords: Mapping[int, Word],
                   pool: Optional[PoolConfig] = None, jobs: int = 1,
                   detector: Callable = find_square_naive) -> GoodSet:
    """Greedy n-good set of exactly ``target_size`` words, certified over index_set.

    ``detector`` is the square oracle for the final re-certification.
    """
    pool = pool or PoolConfig()
    index_set = frozenset(index_set)
    limit = pool.limit or 2 * target_size + 4
    while True:
        cand = candidate_pool(n, index_set, lwords, limit, pool.include_h)
        adj = conflict_graph(cand, index_set, lwords, jobs)
        chosen = greedy_independent_set(adj)
        log.info("n=%d pool=%d conflicts=%d independent=%d", n, len(cand),
                 sum(map(len, adj.values())) // 2, len(chosen))
        if len(chosen) >= target_size:
            break
        enumerated = len(enumerate_nice(n, limit + 1)) > limit
        if not pool.grow or limit >= pool.max_limit or not enumerated:
            raise PoolExhausted(f"only {len(chosen)} independent words of length {n} "
                                f"from a pool of {len(cand)} (target {target_size})")
        limit = min(2 * limit, pool.max_limit)
    s = GoodSet(n, chosen[:target_size], index_set)
    ok, why = verify_good_set(s, lwords, detector)
    if not ok:
        raise AssertionError(f"freshly built good set failed re-verification: {why}")
    return s


@dataclass
class GoodSetCheck:
    ok: bool
    reason: Optional[str] = None
    witness: Optional[SquareWitness] = None


def _nice_naive(v: Word, detector: Callable = find_square_naive) -> bool:
    x = P + v + P
    return (detector(x) is None and len(occurrences(Q, x)) == 2
            and len(occurrences(QBAR, x)) == 2)


def verify_good_set(s: GoodSet, lwords: Mapping[int, Word],
                    detector: Callable = find_square_naive) -> tuple[bool, GoodSetCheck]:
    """Re-check every n-good condition from scratch (naive square oracle by default)."""
    for w in s.words:
        if len(w) != s.n:
            return False, GoodSetCheck(False, f"{render(w)} has length {len(w)} != {s.n}")
        if not _nice_naive(w, detector):
            return False, GoodSetCheck(False, f"{render(w)} is not nice")
    members = set(s.words)
    for w in s.words:
        m = mirror(w)
        if m != w and m in members:
            return False, GoodSetCheck(False, f"mirror pair {render(w)} / {render(m)}")
    for i in sorted(s.index_set):
        l = separator(lwords, i)
        for w in s.words:
            if l[:s.n] == w or l[-s.n:] == w:
                return False, GoodSetCheck(False, f"{render(w)} is a prefix or suffix of l_{i}")
    for i in sorted(s.index_set):
        l = separator(lwords, i)
        for u in s.words:
            for v in s.words:
                if u == v:
                    continue
                for fam in range(4):
                    sq = detector(family_word(fam, u, v, l))
                    if sq is not None:
                        return False, GoodSetCheck(
                            False, f"{FAMILIES[fam]} square for u={render(u)} v={render(v)} i={i}", sq)
    s.certified = True
    return True, GoodSetCheck(True)


def sandwich_word(u: Word, l: Word, v: Word) -> Word:
    return P + u + P + l + P + v + P


def check_separator_words(s: GoodSet, lwords: Mapping[int, Word], detector: Callable = find_square_naive):
    """p.u.p.l_i.p.v.p square-free for all u, v in S (u = v allowed) and i; returns failures."""
    bad = []
    for i in sorted(s.index_set):
        l = separator(lwords, i)
        for u in s.words:
            for v in s.words:
                sq = detector(sandwich_word(u, l, v))
                if sq is not None:
                    bad.append((u, v, i, sq))
    return bad


def block(fw: Word, l: Word, reverse: bool) -> Word:
    """f(w).p.l.p.f(w), mirrored when ``reverse``."""
    b = fw + P + l + P + fw
    return mirror(b) if reverse else b


def block_word(f: Sequence[Word], w: Sequence[int], seps: Sequence[Word], rev: Sequence[bool]) -> Word:
    """p.X_1.p.X_2.p ... X_k.p with X_i the (possibly mirrored) block of letter w_i."""
    out = list(P)
    for c, l, r in zip(w, seps, rev):
        out.extend(block(f[c], l, r))
        out.extend(P)
    return tuple(out)


def block_rotation_word(f: Sequence[Word], w: Sequence[int], seps: Sequence[Word], rev: Sequence[bool],
                   split: int) -> Word:
    """b.X_2.p ... X_k.p.a where X_1.p = a.b and |a| = split."""
    first = block(f[w[0]], seps[0], rev[0]) + P
    a, b = first[:split], first[split:]
    mid = []
    for c, l, r in zip(w[1:], seps[1:], rev[1:]):
        mid.extend(block(f[c], l, r))
        mid.extend(P)
    return b + tuple(mid) + a


# --- file format --------------------------------------------------------------

def format_index_set(ix: Iterable[int]) -> str:
    xs = sorted(ix)
    parts = []
    i = 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        parts.append(f"{xs[i]}..{xs[j]}" if j > i else str(xs[i]))
        i = j + 1
    return ",".join(parts)


def parse_index_set(s: str) -> frozenset:
    out = set()
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..")
            out.update(range(int(a), int(b) + 1))
        else:
            out.add(int(part))
    return frozenset(out)


def format_good_set(s: GoodSet) -> str:
    head = f"n={s.n} index_set={format_index_set(s.index_set)}\n"
    return head + "".join(render(w) + "\n" for w in s.words)


def parse_good_set(text: str) -> GoodSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty good-set file")
    fields = dict(tok.split("=", 1) for tok in lines[0].split())
    try:
        n = int(fields["n"])
        ix = parse_index_set(fields["index_set"])
    except KeyError as exc:
        raise ValueError(f"good-set header lacks {exc}") from None
    return GoodSet(n, [word(ln) for ln in lines[1:]], ix)
