"""Permutations of {1..n} in one-line notation, words in adjacent transpositions.

Products of words are read left to right: the letter ``s_i`` swaps the
entries in positions ``i`` and ``i+1`` of the running one-line word, so
``word_product((4, 2, 3), 5) == Permutation((1, 3, 5, 2, 4))``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator

from .errors import IndexOutOfRange, NotABijection, OutOfRange, SizeLimitExceeded

__all__ = [
    "Permutation", "Word", "parse_permutation", "rank_function", "length",
    "word_product", "reduced_words", "classify", "all_permutations", "size_cap",
]

BLANK = 0


def size_cap(default: int) -> int:
    """Return the size cap, honouring the SCHUBERT_MAX_N override."""
    raw = os.environ.get("SCHUBERT_MAX_N")
    if raw:
        return int(raw)
    return default


@dataclass(frozen=True)
class Permutation:
    one_line: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.one_line)
        object.__setattr__(self, "one_line", values)
        n = len(values)
        if n == 0:
            raise OutOfRange("a permutation needs at least one entry")
        for v in values:
            if not 1 <= v <= n:
                raise OutOfRange(f"entry {v} outside 1..{n}")
        if len(set(values)) != n:
            raise NotABijection(f"{list(values)} repeats an entry")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        if self.n < 10:
            return "[" + "".join(map(str, self.one_line)) + "]"
        return "[" + ",".join(map(str, self.one_line)) + "]"

    def length(self) -> int:
        w = self.one_line
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.one_line, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def matrix(self) -> list[list[int]]:
        """Entry (i, j) (1-based) is 1 iff pi(j) = i."""
        n = self.n
        return [[1 if self.one_line[j] == i + 1 else 0 for j in range(n)] for i in range(n)]

    def extend(self, m: int) -> "Permutation":
        """Embed into S_m by appending fixed points."""
        if m < self.n:
            raise OutOfRange(f"cannot shrink S_{self.n} into S_{m}")
        return Permutation(self.one_line + tuple(range(self.n + 1, m + 1)))

    def trimmed(self) -> "Permutation":
        """Drop trailing fixed points (never below one entry)."""
        w = list(self.one_line)
        while len(w) > 1 and w[-1] == len(w):
            w.pop()
        return Permutation(tuple(w))

    def right_descents(self) -> list[int]:
        w = self.one_line
        return [i for i in range(1, len(w)) if w[i - 1] > w[i]]

    def swap_positions(self, i: int) -> "Permutation":
        w = list(self.one_line)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def to_json(self) -> list[int]:
        return list(self.one_line)


@dataclass(frozen=True)
class Word:
    """Ordered letters; 0 is a blank and positive i stands for s_i."""

    letters: tuple[int, ...]
    ambient_rank: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a != BLANK and not 1 <= a <= self.ambient_rank - 1:
                raise OutOfRange(f"letter s_{a} outside s_1..s_{self.ambient_rank - 1}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def nonblank(self) -> tuple[int, ...]:
        return tuple(a for a in self.letters if a != BLANK)

    def subword(self, keep: Iterable[int]) -> "Word":
        """Blank out every position (1-based) not listed in ``keep``."""
        keep = set(keep)
        return Word(tuple(a if i in keep else BLANK for i, a in enumerate(self.letters, 1)),
                    self.ambient_rank)

    def complement(self, other: "Word") -> "Word":
        """Q minus J: blank where ``other`` has a letter, Q's letter elsewhere."""
        return Word(tuple(BLANK if b != BLANK else a for a, b in zip(self.letters, other.letters)),
                    self.ambient_rank)

    def __str__(self) -> str:
        return "(" + ",".join("-" if a == BLANK else f"s{a}" for a in self.letters) + ")"

    def to_json(self) -> list[int]:
        return list(self.letters)


_INT = re.compile(r"-?\d+")


def parse_permutation(text: str) -> Permutation:
    """Parse ``[25413]``, ``[2,5,4,1,3]``, ``2 5 4 1 3`` or a JSON array.

    Digit strings without separators are read one digit per entry, which is
    only unambiguous for n <= 9.
    """
    text = text.strip()
    if text.startswith("[") and "," in text:
        try:
            return Permutation(tuple(json.loads(text)))
        except json.JSONDecodeError:
            pass
    tokens = _INT.findall(text)
    if not tokens:
        raise OutOfRange(f"no integers in {text!r}")
    if len(tokens) == 1 and len(tokens[0]) > 1 and not tokens[0].startswith("-"):
        tokens = list(tokens[0])
    return Permutation(tuple(int(t) for t in tokens))


def rank_function(pi: Permutation, a: int, b: int) -> int:
    """Rank of the upper-left a x b block of the permutation matrix."""
    if not (1 <= a <= pi.n and 1 <= b <= pi.n):
        raise IndexOutOfRange(f"({a},{b}) outside [1,{pi.n}]^2")
    return sum(1 for i in range(b) if pi.one_line[i] <= a)


def length(pi: Permutation) -> int:
    return pi.length()


def word_product(w: Word | Iterable[int], ambient_rank: int | None = None) -> Permutation:
    if isinstance(w, Word):
        letters, m = w.letters, w.ambient_rank
    else:
        letters = tuple(w)
        m = ambient_rank if ambient_rank is not None else max([a + 1 for a in letters] + [1])
    current = list(range(1, m + 1))
    for a in letters:
        if a == BLANK:
            continue
        if not 1 <= a < m:
            raise OutOfRange(f"letter s_{a} outside rank {m}")
        current[a - 1], current[a] = current[a], current[a - 1]
    return Permutation(tuple(current))


@lru_cache(maxsize=None)
def _reduced_words(one_line: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    descents = [i for i in range(1, len(one_line)) if one_line[i - 1] > one_line[i]]
    if not descents:
        return frozenset({()})
    out = set()
    for i in descents:
        shorter = list(one_line)
        shorter[i - 1], shorter[i] = shorter[i], shorter[i - 1]
        for word in _reduced_words(tuple(shorter)):
            out.add(word + (i,))
    return frozenset(out)


def reduced_words(pi: Permutation, bound: int | None = None) -> set[Word]:
    """All reduced words for ``pi`` by memoised right-descent recursion."""
    cap = bound if bound is not None else size_cap(7)
    if pi.n > cap:
        raise SizeLimitExceeded(f"n={pi.n} exceeds reduced-word bound {cap}")
    m = max(pi.n, 2)
    return {Word(word, m) for word in _reduced_words(pi.one_line)}


def classify(pi: Permutation) -> dict[str, bool]:
    # Local import: regions depends on this module.
    from .regions import rothe_diagram, is_partition_at

    diagram = rothe_diagram(pi)
    return {
        "is_dominant": is_partition_at(diagram, 1, 1),
        "is_one_dominant": pi(1) == 1 and is_partition_at(diagram, 2, 2),
    }


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order of one-line notation."""
    for w in _itertools_permutations(range(1, n + 1)):
        yield Permutation(w)
