"""Nice words: v such that p.v.p is square-free and q, qbar occur only inside the two p's.

Includes the lexicographic DFS for l_n (the least nice word of length n),
bounded enumeration, and the constructive route through images of h.
"""

from __future__ import annotations

import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .morphism import H
from .words import P, Q, QBAR, SquareFreeBuffer, Word, check_alphabet, find_square, occurrences, render, word

log = logging.getLogger(__name__)

CACHE_ENV = "THUESUB_CACHE_DIR"


class BudgetExhausted(RuntimeError):
    """The DFS node budget ran out before the search was decided."""


@dataclass(frozen=True)
class NiceCertificate:
    squarefree: bool
    q_positions: tuple
    qbar_positions: tuple


@dataclass(frozen=True)
class NiceWord:
    word: Word
    certificate: NiceCertificate

    def __len__(self) -> int:
        return len(self.word)


def is_nice(v: Sequence[int]) -> tuple[bool, Optional[NiceCertificate]]:
    """Check niceness of v; returns (flag, certificate-or-None)."""
    v = tuple(v)
    check_alphabet(v)
    x = P + v + P
    cert = NiceCertificate(
        squarefree=find_square(x) is None,
        q_positions=tuple(occurrences(Q, x)),
        qbar_positions=tuple(occurrences(QBAR, x)),
    )
    # the two anchor copies sit at 0 and len(v)+39
    expect_q = (20, len(v) + 59)
    expect_qb = (0, len(v) + 39)
    ok = cert.squarefree and cert.q_positions == expect_q and cert.qbar_positions == expect_qb
    return ok, (cert if ok else None)


def certify(v: Sequence[int]) -> NiceWord:
    ok, cert = is_nice(v)
    if not ok:
        raise ValueError(f"not a nice word: {render(v)}")
    return NiceWord(tuple(v), cert)


def _dfs_nice(length: int, budget: Optional[int]) -> Iterator[Word]:
    """Nice words of the given length in lexicographic order.

    Prefixes are pruned when p.prefix has a square ending at the frontier or
    a q/qbar occurrence ending there (a third anchor occurrence).  Niceness
    itself is only decided at full length.  The budget counts letter-append
    attempts, including the trial appends of the closing p.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    buf = SquareFreeBuffer(P)
    base = len(P)
    nodes = 0
    # stack[i] is the next letter to try at depth i
    stack = [0]
    while stack:
        depth = len(stack) - 1
        c = stack[-1]
        if c > 2:
            stack.pop()
            if stack:
                buf.pop()
                stack[-1] += 1
            continue
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted(f"node budget {budget} exhausted at depth {depth}")
        if not buf.push(c):
            stack[-1] += 1
            continue
        if buf.ends_with(Q) or buf.ends_with(QBAR):
            buf.pop()
            stack[-1] += 1
            continue
        if depth + 1 < length:
            stack.append(0)
            continue
        cand = tuple(buf.buf[base:])
        nodes += len(P)
        if budget is not None and nodes > budget:
            raise BudgetExhausted(f"node budget {budget} exhausted closing a candidate")
        if _closes_nicely(buf):
            yield cand
        buf.pop()
        stack[-1] += 1


def _closes_nicely(buf: SquareFreeBuffer) -> bool:
    """Try appending p; report whether p.v.p is square-free with exact anchors."""
    pushed = 0
    ok = True
    for c in P:
        if not buf.push(c):
            ok = False
            break
        pushed += 1
    if ok:
        # p contributes one q and one qbar on each side; anything more is extra
        ok = len(occurrences(Q, buf.buf)) == 2 and len(occurrences(QBAR, buf.buf)) == 2
    for _ in range(pushed):
        buf.pop()
    return ok


def lex_least_nice(length: int, budget: Optional[int] = None) -> Optional[Word]:
    """l_length, or None when the search is exhausted without a nice word.

    Raises BudgetExhausted if ``budget`` DFS nodes are spent first.
    """
    for v in _dfs_nice(length, budget):
        return v
    return None


def enumerate_nice(length: int, limit: int, budget: Optional[int] = None) -> list[Word]:
    out = []
    if limit <= 0:
        return out
    for v in _dfs_nice(length, budget):
        out.append(v)
        if len(out) >= limit:
            break
    return out


def _admissible_middle(size: int) -> Optional[Word]:
    """Lexicographically least w of the given size with 10.w.01 square-free."""
    buf = SquareFreeBuffer((1, 0))
    stack = [0]
    while stack:
        c = stack[-1]
        if c > 2:
            stack.pop()
            if stack:
                buf.pop()
                stack[-1] += 1
            continue
        if not buf.push(c):
            stack[-1] += 1
            continue
        if len(stack) < size:
            stack.append(0)
            continue
        if buf.push(0):
            if buf.push(1):
                return tuple(buf.buf[2:-2])
            buf.pop()
        buf.pop()
        stack[-1] += 1
    return None


def h_decompositions(target: int) -> list[tuple[int, int]]:
    """All (m, a) with 24*m + a == target, 0 <= a <= m and m >= 6."""
    out = []
    for m in range(max(6, -(-target // 25)), target // 24 + 1):
        a = target - 24 * m
        if 0 <= a <= m:
            out.append((m, a))
    return out


def nice_of_length_via_h(target: int, middle: Optional[Sequence[int]] = None) -> Optional[NiceWord]:
    """A nice word of exactly ``target`` letters, built as an image of 0.w.0 under h.

    Returns None when no (m, a) decomposition exists or no admissible w is found.
    The a long (25-letter) images are assigned to the first a letters.
    """
    for m, a in h_decompositions(target):
        w = tuple(middle) if middle is not None and len(middle) == m - 2 else _admissible_middle(m - 2)
        if w is None:
            continue
        src = (0,) + w + (0,)
        choices = [1] * a + [0] * (m - a)
        v = H.apply(src, choices)
        assert len(v) == target
        return certify(v)
    return None


class LexLeastCache:
    """Persistent map length -> l_length, one ``<length> <digits>`` line per entry.

    Entries are re-validated with is_nice on load; invalid lines are dropped
    with a warning.  Writes go through a temp file and an atomic rename.
    """

    def __init__(self, path: Optional[os.PathLike] = None, budget: Optional[int] = None):
        if path is None:
            d = os.environ.get(CACHE_ENV)
            path = Path(d) / "lex_least_nice.txt" if d else None
        self.path = Path(path) if path is not None else None
        self.budget = budget
        self.entries: dict[int, Word] = {}
        self._absent: set[int] = set()
        if self.path is not None and self.path.exists():
            self.load()

    def load(self) -> None:
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                n_s, w_s = line.split()
                n, w = int(n_s), word(w_s)
            except ValueError:
                log.warning("cache %s:%d unparsable, skipped", self.path, lineno)
                continue
            if len(w) != n or not is_nice(w)[0]:
                log.warning("cache %s:%d failed validation, skipped", self.path, lineno)
                continue
            self.entries[n] = w

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        text = "".join(f"{n} {render(w)}\n" for n, w in sorted(self.entries.items()))
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, self.path)

    def get(self, n: int) -> Word:
        """l_n, computing and persisting it on a miss.  KeyError if no nice word has length n."""
        if n in self.entries:
            return self.entries[n]
        if n in self._absent:
            raise KeyError(n)
        w = lex_least_nice(n, self.budget)
        if w is None:
            self._absent.add(n)
            raise KeyError(n)
        self.entries[n] = w
        self.save()
        return w

    __getitem__ = get

    def __contains__(self, n: int) -> bool:
        try:
            self.get(n)
        except KeyError:
            return False
        return True
