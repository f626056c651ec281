"""The branching morphism h and machine checks of its synchronisation facts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .words import P, Q, QBAR, Word, check_alphabet, find_square, occurrences, render, squarefree_words, word


@dataclass(frozen=True)
class BranchingMorphism:
    """Each letter maps to a tuple of alternative images (index 0 tried first)."""

    image_sets: Mapping[int, tuple]

    def images(self, w: Sequence[int]) -> Iterator[tuple[tuple[int, ...], Word]]:
        """Yield ``(choices, image)`` for every image of w, choices in lexicographic order."""
        w = tuple(w)
        check_alphabet(w, tuple(self.image_sets))
        options = [range(len(self.image_sets[c])) for c in w]
        for choices in itertools.product(*options):
            yield choices, self.apply(w, choices)

    def apply(self, w: Sequence[int], choices: Sequence[int]) -> Word:
        if len(choices) != len(w):
            raise ValueError("choice vector length differs from word length")
        out: list[int] = []
        for c, k in zip(w, choices):
            out.extend(self.image_sets[c][k])
        return tuple(out)

    def image_set(self, w: Sequence[int]) -> list[Word]:
        return [v for _, v in self.images(w)]


H = BranchingMorphism({
    0: (word("012102120210201021201210"), word("0121021202102012021201210")),
    1: (word("120210201021012102012021"), word("1202102010210120102012021")),
    2: (word("201021012102120210120102"), word("2010210121021201210120102")),
})


def images(w: Sequence[int], h: BranchingMorphism = H):
    return h.images(w)


@dataclass
class FactResult:
    name: str
    passed: bool
    checked: int = 0
    counterexample: Optional[str] = None


@dataclass
class SyncFactsReport:
    facts: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.facts)


def _internal_occurrence(pat: Word, v: Word) -> Optional[int]:
    for i in occurrences(pat, v):
        if 0 < i < len(v) - len(pat):
            return i
    return None


def verify_lemma4(h: BranchingMorphism = H) -> SyncFactsReport:
    """Exhaustively check the four synchronisation facts about h, q and p."""
    letters = sorted(h.image_sets)
    report = SyncFactsReport()

    # 1. images of a single letter occur in images of two letters only as prefix or suffix
    f1 = FactResult("internal-factor", True)
    for a, b, c in itertools.product(letters, repeat=3):
        for v in h.image_set((a, b)):
            for vp in h.image_set((c,)):
                f1.checked += 1
                i = _internal_occurrence(vp, v)
                if i is not None and f1.passed:
                    f1.passed = False
                    f1.counterexample = f"h({c})={render(vp)} occurs at {i} in {render(v)} from h({a}{b})"
    report.facts.append(f1)

    # 2. neither q nor its mirror is a factor of an image of two letters
    f2 = FactResult("no-anchor-in-pairs", True)
    for a, b in itertools.product(letters, repeat=2):
        for v in h.image_set((a, b)):
            f2.checked += 1
            for name, pat in (("q", Q), ("qbar", QBAR)):
                occ = occurrences(pat, v)
                if occ and f2.passed:
                    f2.passed = False
                    f2.counterexample = f"{name} at {occ[0]} in {render(v)} from h({a}{b})"
    report.facts.append(f2)

    # 3./4. p.v (v in h(0ab)) and v.p (v in h(ba0)) square-free with one q and one qbar
    for name, left in (("p-prefix", True), ("p-suffix", False)):
        f = FactResult(name, True)
        for a in (1, 2):
            for b in letters:
                if b == a:
                    continue
                src = (0, a, b) if left else (b, a, 0)
                for v in h.image_set(src):
                    f.checked += 1
                    x = P + v if left else v + P
                    problem = _anchor_problem(x)
                    if problem and f.passed:
                        f.passed = False
                        f.counterexample = f"{problem} in image {render(v)} of {render(src)}"
        report.facts.append(f)
    return report


def _anchor_problem(x: Word) -> Optional[str]:
    sq = find_square(x)
    if sq is not None:
        return f"square at {sq.start} period {sq.period}"
    nq, nqb = len(occurrences(Q, x)), len(occurrences(QBAR, x))
    if nq != 1 or nqb != 1:
        return f"{nq} occurrences of q and {nqb} of qbar"
    return None


@dataclass
class ImageCheckReport:
    max_len: int
    words_checked: int = 0
    images_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def spot_check_theorem6(max_len: int, h: BranchingMorphism = H) -> ImageCheckReport:
    """Every image of every square-free ternary word of length <= max_len is square-free."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    rep = ImageCheckReport(max_len)
    for n in range(1, max_len + 1):
        for w in squarefree_words(n):
            rep.words_checked += 1
            for choices, v in h.images(w):
                rep.images_checked += 1
                if find_square(v) is not None:
                    rep.failures.append((w, choices))
    return rep
