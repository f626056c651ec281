"""Words over small integer alphabets and square (repetition) detection.

Words are tuples of non-negative ints.  Ternary words render as digit
strings ("0121"), larger alphabets as space separated integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

Word = tuple

TERNARY = (0, 1, 2)


def word(s: str | Iterable[int]) -> Word:
    """Parse a digit string, a space separated string, or an int iterable."""
    if isinstance(s, str):
        s = s.strip()
        if " " in s:
            return tuple(int(t) for t in s.split())
        return tuple(int(c) for c in s)
    return tuple(int(c) for c in s)


def render(w: Sequence[int]) -> str:
    if all(0 <= c <= 9 for c in w) and (not w or max(w) <= 2):
        return "".join(map(str, w))
    return " ".join(map(str, w))


def check_alphabet(w: Sequence[int], alphabet: Sequence[int] = TERNARY) -> None:
    allowed = set(alphabet)
    for i, c in enumerate(w):
        if c not in allowed:
            raise ValueError(f"letter {c!r} at position {i} not in alphabet {sorted(allowed)}")


def mirror(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


Q = word("1202120121021201021")
QBAR = mirror(Q)
P = QBAR + (0,) + Q


@dataclass(frozen=True)
class SquareWitness:
    """A square ``w[start:start+period] == w[start+period:start+2*period]``.

    ``context`` optionally carries a locus in a graph (vertex ids of the
    square's letters, or any other provenance the caller attaches).
    """

    start: int
    period: int
    context: Optional[object] = field(default=None, compare=False)

    @property
    def end(self) -> int:
        return self.start + 2 * self.period

    def holds_in(self, w: Sequence[int]) -> bool:
        s, n = self.start, self.period
        if n < 1 or s < 0 or s + 2 * n > len(w):
            return False
        return all(w[s + i] == w[s + n + i] for i in range(n))


def find_square_naive(w: Sequence[int]) -> Optional[SquareWitness]:
    """All-windows oracle: leftmost square, smallest period on ties."""
    w = tuple(w)
    L = len(w)
    for s in range(L):
        first = w[s]
        for n in range(1, (L - s) // 2 + 1):
            if w[s + n] == first and w[s:s + n] == w[s + n:s + 2 * n]:
                return SquareWitness(s, n)
    return None


def _as_array(w: Sequence[int]) -> np.ndarray:
    if isinstance(w, np.ndarray):
        return w
    return np.fromiter(w, dtype=np.int32, count=len(w))


def find_square(w: Sequence[int]) -> Optional[SquareWitness]:
    """Leftmost square of ``w`` (smallest period on ties), or None.

    Vectorised over periods: for period n, positions i with w[i] == w[i+n]
    are marked and a square starts wherever n consecutive marks begin.
    """
    a = _as_array(w)
    L = len(a)
    best_s, best_n = L, 0
    for n in range(1, L // 2 + 1):
        # only starts strictly left of the current best can improve it
        last_start = min(L - 2 * n, best_s - 1)
        if last_start < 0:
            break
        eq = a[: last_start + 2 * n - n] == a[n: last_start + 2 * n]
        if n == 1:
            hits = np.flatnonzero(eq)
        else:
            cs = np.concatenate(([0], np.cumsum(eq, dtype=np.int32)))
            hits = np.flatnonzero(cs[n:] - cs[:-n] == n)
        if hits.size:
            best_s, best_n = int(hits[0]), n
    if best_n == 0:
        return None
    return SquareWitness(best_s, best_n)


def is_squarefree(w: Sequence[int]) -> bool:
    return find_square(w) is None


def square_suffix_period(w: Sequence[int], length: Optional[int] = None) -> int:
    """Smallest period of a square ending at the last letter of ``w[:length]``, 0 if none.

    This is the incremental test used when extending a square-free word by
    one letter: only squares ending at the new letter need checking.
    """
    L = len(w) if length is None else length
    if L < 2:
        return 0
    if isinstance(w, np.ndarray):
        return _square_suffix_period_np(w, L)
    last = w[L - 1]
    for n in range(1, L // 2 + 1):
        if w[L - 1 - n] == last and w[L - n:L] == w[L - 2 * n:L - n]:
            return n
    return 0


def _square_suffix_period_np(a: np.ndarray, L: int) -> int:
    half = L // 2
    periods = np.arange(1, half + 1)
    cand = periods[a[L - 1 - periods] == a[L - 1]]
    if cand.size and L >= 3:
        ok = cand[(cand == 1) | (a[np.maximum(L - 2 - cand, 0)] == a[L - 2])]
        cand = ok
    for n in cand.tolist():
        if np.array_equal(a[L - n:L], a[L - 2 * n:L - n]):
            return n
    return 0


class SquareFreeBuffer:
    """Growable word that rejects letters creating a square at the end.

    ``push`` returns False (and leaves the word unchanged) if the letter would
    create a square; ``pop`` undoes the last push.  Meant for DFS searches.
    """

    # above this length the suffix test switches to the numpy path
    NP_THRESHOLD = 600

    def __init__(self, prefix: Sequence[int] = ()):
        self.buf: list[int] = []
        self.arr = np.zeros(1024, dtype=np.int8)
        for c in prefix:
            if not self.push(c):
                raise ValueError("prefix is not square-free")

    def push(self, c: int) -> bool:
        L = len(self.buf)
        if L == len(self.arr):
            self.arr = np.concatenate([self.arr, np.zeros(L, dtype=np.int8)])
        self.arr[L] = c
        self.buf.append(c)
        if L + 1 > self.NP_THRESHOLD:
            bad = _square_suffix_period_np(self.arr, L + 1)
        else:
            bad = square_suffix_period(self.buf)
        if bad:
            self.buf.pop()
            return False
        return True

    def pop(self) -> int:
        return self.buf.pop()

    def ends_with(self, pat: Sequence[int]) -> bool:
        k = len(pat)
        return k <= len(self.buf) and self.buf[-k:] == list(pat)

    def word(self) -> Word:
        return tuple(self.buf)

    def __len__(self) -> int:
        return len(self.buf)


def occurrences(pattern: Sequence[int], w: Sequence[int]) -> list[int]:
    """Start indices of every (possibly overlapping) occurrence of pattern in w."""
    pattern, w = tuple(pattern), tuple(w)
    k = len(pattern)
    if k == 0:
        raise ValueError("empty pattern")
    return [i for i in range(len(w) - k + 1) if w[i:i + k] == pattern]


def squarefree_words(n: int, alphabet: Sequence[int] = TERNARY) -> Iterator[Word]:
    """All square-free words of length n in lexicographic order (pruned DFS)."""
    if n == 0:
        yield ()
        return
    # iterative DFS: nxt[d] is the next alphabet index to try at depth d
    buf: list[int] = []
    nxt = [0]
    k = len(alphabet)
    while nxt:
        d = len(nxt) - 1
        if nxt[d] == k:
            nxt.pop()
            if buf:
                buf.pop()
            continue
        c = alphabet[nxt[d]]
        nxt[d] += 1
        buf.append(c)
        if square_suffix_period(buf):
            buf.pop()
        elif len(buf) == n:
            yield tuple(buf)
            buf.pop()
        else:
            nxt.append(0)


def count_squarefree(n: int, alphabet: Sequence[int] = TERNARY) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(1 for _ in squarefree_words(n, alphabet))


def lex_least_squarefree(n: int, alphabet: Sequence[int] = TERNARY) -> Word:
    for w in squarefree_words(n, alphabet):
        return w
    raise ValueError(f"no square-free word of length {n} over {list(alphabet)}")


def circular_squares(c: Sequence[int], max_len: int) -> Optional[SquareWitness]:
    """Square of total length <= max_len in the cyclic word c.

    Equivalently, a square in c+c starting before len(c).  The witness start
    is an index into the doubled word.
    """
    c = tuple(c)
    m = len(c)
    if max_len > m:
        raise ValueError(f"max_len {max_len} exceeds cycle length {m}")
    if m == 0:
        return None
    a = _as_array(c + c)
    best_s, best_n = m, 0
    for n in range(1, max_len // 2 + 1):
        last_start = min(m - 1, best_s - 1)
        if last_start < 0:
            break
        eq = a[: last_start + n] == a[n: last_start + 2 * n]
        if n == 1:
            hits = np.flatnonzero(eq)
        else:
            cs = np.concatenate(([0], np.cumsum(eq, dtype=np.int32)))
            hits = np.flatnonzero(cs[n:] - cs[:-n] == n)
        if hits.size:
            best_s, best_n = int(hits[0]), n
    if best_n == 0:
        return None
    return SquareWitness(best_s, best_n)


def circular_squares_naive(c: Sequence[int], max_len: int) -> Optional[SquareWitness]:
    c = tuple(c)
    m = len(c)
    if max_len > m:
        raise ValueError(f"max_len {max_len} exceeds cycle length {m}")
    d = c + c
    for s in range(m):
        for n in range(1, max_len // 2 + 1):
            if d[s:s + n] == d[s + n:s + 2 * n]:
                return SquareWitness(s, n)
    return None
