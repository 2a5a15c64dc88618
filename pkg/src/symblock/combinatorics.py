"""Partitions, semistandard tableaux and profile matrices.

Enumeration orders are fixed because every downstream block and row index
depends on them:

* partitions: decreasing lexicographic, e.g. ``(3,), (2, 1), (1, 1, 1)``;
* semistandard tableaux: increasing lexicographic on the reading word
  (boxes numbered row by row, left to right);
* profiles: increasing lexicographic on the row-major flattened matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence


class Partition(tuple):
    """A nonincreasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


def enum_partitions(n: int, max_parts: int) -> list[Partition]:
    """Partitions of ``n`` with at most ``max_parts`` parts, decreasing lex."""
    return [Partition(x) for x in _partitions(n, max_parts, n)]


@lru_cache(maxsize=None)
def _partitions(n: int, max_parts: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_parts == 0:
        return ()
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, max_parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def dual_partition(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition(())
    return Partition(tuple(sum(1 for x in lam if x >= i) for i in range(1, lam[0] + 1)))


@dataclass(frozen=True)
class Tableau:
    """A filling of a Ferrers diagram; ``rows[i][j]`` is the entry in box (i+1, j+1)."""

    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != tuple(self.shape):
            raise ValueError(f"rows {self.rows} do not fit shape {tuple(self.shape)}")

    @classmethod
    def from_word(cls, shape: Sequence[int], word: Sequence[int]) -> "Tableau":
        shape = Partition(shape)
        rows, k = [], 0
        for length in shape:
            rows.append(tuple(word[k:k + length]))
            k += length
        return cls(shape, tuple(rows))

    @classmethod
    def row_filled(cls, shape: Sequence[int]) -> "Tableau":
        """t_lambda: row i is filled with i."""
        shape = Partition(shape)
        return cls(shape, tuple((i + 1,) * length for i, length in enumerate(shape)))

    @property
    def word(self) -> tuple[int, ...]:
        """Entries in box-number order."""
        return tuple(x for row in self.rows for x in row)

    @property
    def n(self) -> int:
        return self.shape.n

    def weight(self, p: int) -> tuple[int, ...]:
        w = [0] * p
        for x in self.word:
            w[x - 1] += 1
        return tuple(w)

    def is_semistandard(self) -> bool:
        for row in self.rows:
            if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
                return False
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                return False
        return True

    def columns(self) -> list[list[int]]:
        """Box numbers (0-based) of each column, top to bottom."""
        offsets, k = [], 0
        for length in self.shape:
            offsets.append(k)
            k += length
        ncols = self.shape[0] if self.shape else 0
        return [[offsets[i] + j for i in range(len(self.shape)) if self.shape[i] > j]
                for j in range(ncols)]


def enum_ssyt(lam: Sequence[int], p: int) -> list[Tableau]:
    """Semistandard tableaux of shape ``lam`` with entries in 1..p.

    Shapes with more than ``p`` rows give the empty list.
    """
    lam = Partition(lam)
    return [Tableau.from_word(lam, w) for w in _ssyt_words(tuple(lam), p)]


@lru_cache(maxsize=None)
def _ssyt_words(lam: tuple[int, ...], p: int) -> tuple[tuple[int, ...], ...]:
    if len(lam) > p:
        return ()
    cells = [(i, j) for i, length in enumerate(lam) for j in range(length)]
    col_len = dual_partition(lam)
    grid = [[0] * length for length in lam]
    out = []

    def fill(k: int):
        if k == len(cells):
            out.append(tuple(x for row in grid for x in row))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, grid[i][j - 1])
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        # boxes below in the same column need strictly larger entries
        hi = p - (col_len[j] - 1 - i)
        for v in range(lo, hi + 1):
            grid[i][j] = v
            fill(k + 1)
        grid[i][j] = 0

    fill(0)
    return tuple(out)


@dataclass(frozen=True)
class Profile:
    """A p x p matrix of nonnegative integers; the orbit label D(a, b) of a word pair."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = len(self.rows)
        if any(len(r) != p for r in self.rows):
            raise ValueError("profile must be square")
        if any(x < 0 for r in self.rows for x in r):
            raise ValueError(f"profile entries must be nonnegative: {self.rows}")

    @classmethod
    def of(cls, rows) -> "Profile":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def from_flat(cls, flat: Sequence[int], p: int) -> "Profile":
        return cls(tuple(tuple(flat[i * p:(i + 1) * p]) for i in range(p)))

    @classmethod
    def diag(cls, mu: Sequence[int]) -> "Profile":
        p = len(mu)
        return cls(tuple(tuple(mu[i] if i == j else 0 for j in range(p)) for i in range(p)))

    @classmethod
    def zero(cls, p: int) -> "Profile":
        return cls.diag((0,) * p)

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return sum(map(sum, self.rows))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    @property
    def T(self) -> "Profile":
        return Profile(tuple(zip(*self.rows))) if self.rows else self

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.rows)) if self.rows else ()

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based entry access, ``D[i, j]``."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def moved(self, remove: tuple[int, int], add: tuple[int, int]) -> Optional["Profile"]:
        """``D - E_remove + E_add`` (1-based), or None if an entry would go negative."""
        rows = [list(r) for r in self.rows]
        rows[remove[0] - 1][remove[1] - 1] -= 1
        if rows[remove[0] - 1][remove[1] - 1] < 0:
            return None
        rows[add[0] - 1][add[1] - 1] += 1
        return Profile(tuple(map(tuple, rows)))

    def is_lower_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.p) for j in range(i + 1, self.p))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Profile({self.tolist()})"


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into k parts, increasing lexicographic."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def enum_profiles(n: int, p: int) -> list[Profile]:
    return [Profile.from_flat(c, p) for c in compositions(n, p * p)]


def word_profile(a: Sequence[int], b: Sequence[int], p: int) -> Profile:
    """D(a, b): entry (i, j) counts positions k with a_k = i and b_k = j."""
    rows = [[0] * p for _ in range(p)]
    for x, y in zip(a, b):
        rows[x - 1][y - 1] += 1
    return Profile(tuple(map(tuple, rows)))


def tableau_profile(t: Tableau, p: int) -> Profile:
    """D(t, t_lambda): entry (i, j) counts the symbols i in row j of t."""
    if len(t.shape) > p:
        raise ValueError(f"shape {tuple(t.shape)} has more than {p} rows")
    rows = [[0] * p for _ in range(p)]
    for j, row in enumerate(t.rows):
        for x in row:
            rows[x - 1][j] += 1
    return Profile(tuple(map(tuple, rows)))


def profile_tableau(D: Profile) -> Optional[Tableau]:
    """t(D): shape D^T 1, row j holding D[i, j] symbols i in sorted order.

    Returns None when the column sums are not nonincreasing.
    """
    lam = D.col_sums()
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        return None
    shape = Partition(lam)
    rows = []
    for j in range(len(shape)):
        rows.append(tuple(i + 1 for i in range(D.p) for _ in range(D.rows[i][j])))
    return Tableau(shape, tuple(rows))
