"""The Schur module S^lambda(Q^n) in its semistandard tableau basis.

Two models are kept side by side. The quotient model straightens tableaux of
vectors with the alternating and exchange relations. The polynomial model
sends a tableau of vectors to a product of determinants in a t x n matrix of
indeterminates Z. Tests use each model as an oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from . import _linalg as la
from .partitions import Partition, Tableau, enumerate_ssyt, highest_weight_tableau

Cols = tuple[tuple[int, ...], ...]


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    sign = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def _sort_columns(cols: Cols) -> tuple[int, Cols | None]:
    sign = 1
    out = []
    for col in cols:
        if len(set(col)) < len(col):
            return 0, None
        sign *= _perm_sign(col)
        out.append(tuple(sorted(col)))
    return sign, tuple(out)


def _first_violation(cols: Cols) -> tuple[int, int] | None:
    for j in range(len(cols) - 1):
        left, right = cols[j], cols[j + 1]
        for k in range(len(right)):
            if left[k] > right[k]:
                return j, k
    return None


@lru_cache(maxsize=None)
def _straighten_cols(cols: Cols) -> tuple[tuple[Cols, int], ...]:
    """Integer coordinates of e_cols in the semistandard basis.

    Columns are index tuples in any order. The exchange step at the first
    violation (j, k) swaps the bottom k+1 entries of column j+1 with every
    choice of k+1 entries of column j, keeping the vertical order. Each new
    term has a larger right column, so the recursion is well founded.
    """
    sign, cols = _sort_columns(cols)
    if not sign:
        return ()
    hit = _first_violation(cols)
    if hit is None:
        return ((cols, sign),)
    j, k = hit
    left, right = cols[j], cols[j + 1]
    moved = right[: k + 1]
    acc: dict[Cols, int] = {}
    for pos in combinations(range(len(left)), k + 1):
        new_left = list(left)
        new_right = list(right)
        for slot, p in enumerate(pos):
            new_left[p] = moved[slot]
            new_right[slot] = left[p]
        new_cols = cols[:j] + (tuple(new_left), tuple(new_right)) + cols[j + 2 :]
        for key, c in _straighten_cols(new_cols):
            acc[key] = acc.get(key, 0) + sign * c
    return tuple(sorted((key, c) for key, c in acc.items() if c))


@dataclass(frozen=True)
class SchurVector:
    """Sparse rational coordinates in the semistandard basis of S^lambda(Q^n)."""

    shape: Partition
    n: int
    coords: Mapping[Tableau, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for t, c in self.coords.items():
            c = Fraction(c)
            if c:
                if t.shape != self.shape:
                    raise ValueError("tableau shape does not match")
                clean[t] = c
        object.__setattr__(self, "coords", dict(sorted(clean.items())))

    @classmethod
    def basis(cls, tableau: Tableau, n: int) -> "SchurVector":
        return cls(tableau.shape, n, {tableau: Fraction(1)})

    def __add__(self, other: "SchurVector") -> "SchurVector":
        self._check(other)
        out = dict(self.coords)
        for t, c in other.coords.items():
            out[t] = out.get(t, 0) + c
        return SchurVector(self.shape, self.n, out)

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        return self + other * -1

    def __mul__(self, scalar) -> "SchurVector":
        scalar = Fraction(scalar)
        return SchurVector(self.shape, self.n, {t: c * scalar for t, c in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurVector):
            return NotImplemented
        return self.shape == other.shape and self.n == other.n and self.coords == other.coords

    def __hash__(self):
        return hash((self.shape, self.n, tuple(self.coords.items())))

    def _check(self, other: "SchurVector"):
        if self.shape != other.shape or self.n != other.n:
            raise ValueError("SchurVectors live in different modules")

    def is_zero(self) -> bool:
        return not self.coords

    def vector(self) -> list[Fraction]:
        """Dense coordinates in the order of enumerate_ssyt."""
        return [self.coords.get(t, Fraction(0)) for t in enumerate_ssyt(self.shape, self.n)]

    def to_json(self) -> dict[str, str]:
        return {t.encode(): str(c) for t, c in self.coords.items()}


@dataclass(frozen=True)
class VectorTableau:
    """A tableau with vectors of Q^n in its cells, stored column by column."""

    shape: Partition
    cells: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __init__(self, shape: Partition, cells: Iterable[Iterable[Iterable]]):
        cells = tuple(tuple(tuple(Fraction(x) for x in v) for v in col) for col in cells)
        if tuple(len(c) for c in cells) != shape.columns:
            raise ValueError(f"cells do not fit the shape {shape}")
        lengths = {len(v) for col in cells for v in col}
        if len(lengths) != 1:
            raise ValueError("all cell vectors must have the same length")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return len(self.cells[0][0])

    @classmethod
    def from_tableau(cls, tableau: Tableau, n: int) -> "VectorTableau":
        def e(i):
            return [int(j == i - 1) for j in range(n)]

        return cls(tableau.shape, [[e(i) for i in col] for col in tableau.columns])

    @classmethod
    def from_flag(cls, shape: Partition, columns: Sequence[Sequence]) -> "VectorTableau":
        """Flag vector: column l holds x_1, ..., x_{lambda*_l}."""
        return cls(shape, [[columns[i] for i in range(h)] for h in shape.columns])

    def act(self, g: Sequence[Sequence]) -> "VectorTableau":
        return VectorTableau(self.shape, [[la.matvec(g, v) for v in col] for col in self.cells])


def straighten(vt: VectorTableau, shape: Partition | None = None) -> SchurVector:
    """Coordinates of the image of a vector tableau in the semistandard basis."""
    if shape is not None and shape != vt.shape:
        raise ValueError("shape mismatch")
    n = vt.n
    # multilinear expansion, one column at a time: column l contributes its
    # maximal minors, i.e. the coefficients of e_{i_1} ^ ... ^ e_{i_d}
    per_column = []
    for col in vt.cells:
        minors = la.maximal_minors(col)
        per_column.append([(tuple(i + 1 for i in I), c) for I, c in minors.items() if c])
    terms: dict[Cols, Fraction] = {(): Fraction(1)}
    for options in per_column:
        nxt: dict[Cols, Fraction] = {}
        for key, c in terms.items():
            for idx, m in options:
                nk = key + (idx,)
                nxt[nk] = nxt.get(nk, 0) + c * m
        terms = nxt
    out: dict[Tableau, Fraction] = {}
    for key, c in terms.items():
        if not c:
            continue
        for std, s in _straighten_cols(key):
            t = Tableau(vt.shape, std)
            out[t] = out.get(t, 0) + c * s
    return SchurVector(vt.shape, n, out)


def straighten_tableau(tableau: Tableau, n: int) -> SchurVector:
    """Straighten a (possibly non-standard) tableau of basis indices."""
    out = {Tableau(tableau.shape, std): Fraction(s) for std, s in _straighten_cols(tableau.columns)}
    return SchurVector(tableau.shape, n, out)


# ----------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial in the entries z_{i,j} of a t x n matrix Z.

    Keys are flattened exponent tuples of length t*n (row-major).
    """

    t: int
    n: int
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: Fraction(c) for k, c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def variable(cls, t: int, n: int, i: int, j: int) -> "Polynomial":
        """z_{i,j} with 1-based indices."""
        key = [0] * (t * n)
        key[(i - 1) * n + (j - 1)] = 1
        return cls(t, n, {tuple(key): Fraction(1)})

    @classmethod
    def constant(cls, t: int, n: int, c) -> "Polynomial":
        return cls(t, n, {(0,) * (t * n): Fraction(c)})

    def _check(self, other: "Polynomial"):
        if (self.t, self.n) != (other.t, other.n):
            raise ValueError("polynomials on different variable grids")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Polynomial(self.t, self.n, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.t, self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return Polynomial(self.t, self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.t, self.n) == (other.t, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.t, self.n, tuple(sorted(self.terms.items()))))

    def substitute(self, g: Sequence[Sequence]) -> "Polynomial":
        """P(Z g): the action of g on the polynomial model."""
        t, n = self.t, self.n
        images = []
        for i in range(1, t + 1):
            row = []
            for j in range(n):
                p = Polynomial(t, n, {})
                for k in range(n):
                    if g[k][j]:
                        p = p + Polynomial.variable(t, n, i, k + 1).scale(g[k][j])
                row.append(p)
            images.append(row)
        flat = [p for row in images for p in row]
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def power(idx: int, e: int) -> Polynomial:
            if (idx, e) not in power_cache:
                power_cache[(idx, e)] = Polynomial.constant(t, n, 1) if e == 0 else power(idx, e - 1) * flat[idx]
            return power_cache[(idx, e)]

        out = Polynomial(t, n, {})
        for key, c in self.terms.items():
            term = Polynomial.constant(t, n, c)
            for idx, e in enumerate(key):
                if e:
                    term = term * power(idx, e)
            out = out + term
        return out


def _linear_rows(t: int, n: int, m: Sequence[Sequence]) -> list[list[Polynomial]]:
    """Entries of Z[1..d] . M as linear polynomials on the t x n grid; M is n x d."""
    d = len(m[0])
    rows = []
    for i in range(1, d + 1):
        row = []
        for c in range(d):
            terms = {}
            for j in range(n):
                if m[j][c]:
                    key = [0] * (t * n)
                    key[(i - 1) * n + j] = 1
                    terms[tuple(key)] = Fraction(m[j][c])
            row.append(Polynomial(t, n, terms))
        rows.append(row)
    return rows


def _leibniz(entries: list[list[Polynomial]], t: int, n: int) -> Polynomial:
    d = len(entries)
    out = Polynomial(t, n, {})
    for perm in permutations(range(d)):
        term = Polynomial.constant(t, n, _perm_sign(perm))
        for i, p in enumerate(perm):
            term = term * entries[i][p]
            if not term.terms:
                break
        out = out + term
    return out


def phi_expand(vt: VectorTableau) -> Polynomial:
    """prod over columns of det(Z[1..d] . M_l), M_l the matrix of column-l vectors."""
    t = vt.shape.height
    n = vt.n
    out = Polynomial.constant(t, n, 1)
    for col in vt.cells:
        m = la.columns_to_matrix(col)
        out = out * _leibniz(_linear_rows(t, n, m), t, n)
    return out


def phi_T(tableau: Tableau, n: int) -> Polynomial:
    return phi_expand(VectorTableau.from_tableau(tableau, n))


def schur_polynomial(v: SchurVector) -> Polynomial:
    """sum_T c_T phi_T for a SchurVector."""
    t = v.shape.height
    out = Polynomial(t, v.n, {})
    for tab, c in v.coords.items():
        out = out + phi_T(tab, v.n).scale(c)
    return out


def apolar_product(p: Polynomial, q: Polynomial) -> Fraction:
    """sum over monomials of alpha! p_alpha q_alpha."""
    p._check(q)
    total = Fraction(0)
    for k, c in p.terms.items():
        d = q.terms.get(k)
        if d:
            w = 1
            for e in k:
                w *= factorial(e)
            total += w * c * d
    return total


def representation_matrix(g: Sequence[Sequence], lam: Partition, n: int | None = None) -> list[list[Fraction]]:
    """Matrix of pi_lambda(g) in the semistandard basis (columns = images of basis vectors)."""
    g = la.to_matrix(g)
    n = len(g) if n is None else n
    if la.det(g) == 0:
        raise ValueError("g is singular")
    basis = enumerate_ssyt(lam, n)
    index = {t: i for i, t in enumerate(basis)}
    mat = [[Fraction(0)] * len(basis) for _ in basis]
    for col, tab in enumerate(basis):
        image = straighten(VectorTableau.from_tableau(tab, n).act(g))
        for t, c in image.coords.items():
            mat[index[t]][col] = c
    return mat


def act(g: Sequence[Sequence], v: SchurVector) -> SchurVector:
    """pi_lambda(g) v."""
    g = la.to_matrix(g)
    out = SchurVector(v.shape, v.n, {})
    for tab, c in v.coords.items():
        out = out + straighten(VectorTableau.from_tableau(tab, v.n).act(g)) * c
    return out


def highest_weight_vector(lam: Partition, n: int) -> SchurVector:
    return SchurVector.basis(highest_weight_tableau(lam), n)
