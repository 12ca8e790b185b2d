"""Partitions, semistandard tableaux and torus characters.

Conventions: a partition lists row lengths, largest first. Diagrams are drawn
French style, so row 1 is at the bottom and a column is read bottom-to-top.
Tableaux are stored column by column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("the empty partition is not allowed")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated form used on the command line, e.g. ``"3,1"``."""
        try:
            parts = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    @classmethod
    def from_columns(cls, heights: Iterable[int]) -> "Partition":
        """The partition whose column heights (lambda*) are ``heights``."""
        return cls(heights).conjugate()

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def width(self) -> int:
        return self.parts[0]

    @property
    def height(self) -> int:
        return len(self.parts)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Column heights, i.e. the parts of the conjugate partition."""
        return tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1))

    def conjugate(self) -> "Partition":
        return Partition(self.columns)

    def column_multiplicities(self) -> dict[int, int]:
        """{column height d: number of columns of height d}."""
        out: dict[int, int] = {}
        for d in self.columns:
            out[d] = out.get(d, 0) + 1
        return out

    def check_fits(self, n: int) -> None:
        if self.height > n:
            raise ValueError(f"partition {self} has {self.height} parts, more than n={n}")


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


def complement(lam: Partition, n: int) -> Partition:
    """Complementary partition: column l of lam and column s+1-l of the result fill height n.

    Columns of full height n complement to empty columns, which are dropped;
    the operation is an involution on partitions with fewer than n parts.
    """
    lam.check_fits(n)
    cols = lam.columns
    s = len(cols)
    new_cols = [n - cols[s - 1 - i] for i in range(s)]
    new_cols = [c for c in new_cols if c > 0]
    if not new_cols:
        raise ValueError(f"complement of {lam} in height {n} is empty")
    return Partition.from_columns(sorted(new_cols, reverse=True))


def hook_content_dimension(lam: Partition, n: int) -> int:
    """dim of the Schur module: prod over boxes of (n + content) / hook."""
    num = 1
    den = 1
    cols = lam.columns
    for i, row_len in enumerate(lam.parts):
        for j in range(row_len):
            arm = row_len - j - 1
            leg = cols[j] - i - 1
            num *= n + j - i
            den *= arm + leg + 1
    return num // den


@dataclass(frozen=True, order=True)
class Tableau:
    """A filling of a diagram, column-major; ``columns[l][j]`` is row j+1 of column l+1."""

    shape: Partition
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if tuple(len(c) for c in cols) != self.shape.columns:
            raise ValueError(f"column lengths {[len(c) for c in cols]} do not fit shape {self.shape}")

    @property
    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for col in self.columns for x in col)

    def is_semistandard(self) -> bool:
        cols = self.columns
        if any(a >= b for col in cols for a, b in zip(col, col[1:])):
            return False
        return all(left[j] <= right[j] for left, right in zip(cols, cols[1:]) for j in range(len(right)))

    def encode(self) -> str:
        """Column-reading encoding, e.g. ``"1,2|1"`` for the (2,1) highest weight tableau."""
        return "|".join(",".join(map(str, c)) for c in self.columns)

    @classmethod
    def decode(cls, text: str) -> "Tableau":
        cols = [tuple(int(x) for x in c.split(",")) for c in text.split("|")]
        return cls(Partition.from_columns(len(c) for c in cols), tuple(cols))

    def __str__(self) -> str:
        return self.encode()


SemistandardTableau = Tableau


def _ssyt_columns(heights: Sequence[int], n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    def rec(idx: int, prev: tuple[int, ...] | None):
        if idx == len(heights):
            yield ()
            return
        for col in combinations(range(1, n + 1), heights[idx]):
            if prev is not None and any(col[j] < prev[j] for j in range(len(col))):
                continue
            for rest in rec(idx + 1, col):
                yield (col,) + rest

    yield from rec(0, None)


def enumerate_ssyt(lam: Partition, n: int) -> list[Tableau]:
    """All semistandard tableaux of shape lam with entries in 1..n, sorted by reading word."""
    lam.check_fits(n)
    return [Tableau(lam, cols) for cols in _ssyt_columns(lam.columns, n)]


def character(lam: Partition, x: Sequence) -> Fraction:
    """chi_lambda(x) = prod x_i ** lambda_i."""
    if len(x) < lam.height:
        raise ValueError("torus element has fewer entries than the partition has parts")
    out = Fraction(1)
    for xi, p in zip(x, list(lam.parts) + [0] * (len(x) - lam.height)):
        xi = Fraction(xi)
        if xi == 0:
            raise ValueError("torus entries must be nonzero")
        out *= xi**p
    return out


def highest_weight_tableau(lam: Partition) -> Tableau:
    """U(lambda): column l is filled 1, 2, ..., lambda*_l from the bottom."""
    return Tableau(lam, tuple(tuple(range(1, h + 1)) for h in lam.columns))
