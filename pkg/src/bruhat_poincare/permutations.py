"""
Permutations of {1, ..., n} in one-line notation, Bruhat order and intervals.

>>> u = Permutation.parse("4231")
>>> u.length()
5
>>> str(u.inverse())
'4231'
>>> bruhat_leq(Permutation.parse("1324"), u)
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import SizeGuardError

__all__ = [
    "Permutation", "BruhatInterval", "bruhat_leq", "interval",
    "all_permutations", "MAX_INTERVAL_N",
]

# exhaustive interval enumeration filters all of S_n
MAX_INTERVAL_N = 8


@dataclass(frozen=True, order=True)
class Permutation:
    """An element u of S_n stored as its word (u(1), ..., u(n))."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Digit string for n <= 9 ("4231"), comma separated otherwise."""
        text = text.strip()
        if not text:
            raise ValueError("empty permutation string")
        if "," in text:
            return cls(tuple(int(x) for x in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        # 1-based, as in u(i)
        return self.word[i - 1]

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def position(self, value: int) -> int:
        """u^{-1}(value), 1-based."""
        return self.word.index(value) + 1

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.word, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        """Number of inversions."""
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def apply_transposition(self, a: int, b: int) -> Permutation:
        """t_{a,b} u: swap the values a and b in the word."""
        if not (1 <= a <= self.n and 1 <= b <= self.n) or a == b:
            raise ValueError(f"bad transposition ({a},{b}) for n={self.n}")
        swap = {a: b, b: a}
        return Permutation(tuple(swap.get(x, x) for x in self.word))

    def descents(self) -> int:
        return sum(1 for x, y in zip(self.word, self.word[1:]) if x > y)


def _rank_table(word: tuple[int, ...]) -> list[list[int]]:
    # r[i][j] = #{k <= i : u(k) >= j}, i, j in 1..n
    n = len(word)
    table = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        x = word[i - 1]
        prev = table[i - 1]
        row = table[i]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if x >= j else 0)
    return table


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """v <= w in Bruhat order, by comparing rank tables entrywise."""
    if v.n != w.n:
        raise ValueError(f"permutations of different sizes: {v.n} vs {w.n}")
    rv, rw = _rank_table(v.word), _rank_table(w.word)
    n = v.n
    return all(rv[i][j] <= rw[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic order of words."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


@dataclass(frozen=True)
class BruhatInterval:
    lower: Permutation
    upper: Permutation
    members: tuple[Permutation, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, u: Permutation) -> bool:
        return u in self.members


def interval(v: Permutation, w: Permutation, max_n: int = MAX_INTERVAL_N) -> BruhatInterval:
    """All u with v <= u <= w, sorted lexicographically by word."""
    if v.n != w.n:
        raise ValueError(f"permutations of different sizes: {v.n} vs {w.n}")
    if v.n > max_n:
        raise SizeGuardError(f"interval enumeration limited to n <= {max_n}, got n={v.n}")
    if not bruhat_leq(v, w):
        raise ValueError(f"{v} is not below {w} in Bruhat order")
    lo, hi = v.length(), w.length()
    members = tuple(
        u for u in all_permutations(v.n)
        if lo <= u.length() <= hi and bruhat_leq(v, u) and bruhat_leq(u, w)
    )
    return BruhatInterval(v, w, members)
