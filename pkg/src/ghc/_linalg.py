"""Exact rational and integer matrix helpers.

Matrices are plain lists of rows. Sizes in this package are desk scale
(n <= 8, exterior powers up to 70), so straightforward Gaussian elimination
over ``Fraction`` is fast enough and keeps every result exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def columns_to_matrix(cols: Sequence[Sequence]) -> list[list]:
    """n x d matrix whose columns are ``cols``."""
    return transpose(cols)


def quadratic_form(a: Sequence[Sequence], x: Sequence, y: Sequence | None = None):
    """x^T A y (y defaults to x)."""
    if y is None:
        y = x
    return sum(xi * aij * yj for xi, row in zip(x, a) for aij, yj in zip(row, y) if xi and yj)


def gram(a: Sequence[Sequence], cols: Sequence[Sequence]) -> Matrix:
    """X^T A X for X given by its columns."""
    ax = [matvec(a, c) for c in cols]
    return [[Fraction(sum(u * v for u, v in zip(ci, axj))) for axj in ax] for ci in cols]


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        p = a[k][k]
        result *= p
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return result


def leading_pivots(m: Sequence[Sequence]) -> list[Fraction]:
    """Pivots of Gaussian elimination without row exchange (the D of LDL^T).

    The k-th leading principal minor is the product of the first k pivots.
    The list stops early at the first zero pivot.
    """
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    pivots = []
    for k in range(n):
        p = a[k][k]
        pivots.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return pivots


def leading_minors(m: Sequence[Sequence]) -> list[Fraction]:
    """[Delta_1, ..., Delta_n]; trailing entries are 0 once a minor vanishes."""
    n = len(m)
    out = []
    acc = Fraction(1)
    pivots = leading_pivots(m)
    for k in range(n):
        if k < len(pivots):
            acc *= pivots[k]
            out.append(acc)
        else:
            out.append(Fraction(0))
    return out


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def is_positive_definite(m: Sequence[Sequence]) -> bool:
    pivots = leading_pivots(m)
    return len(pivots) == len(m) and all(p > 0 for p in pivots)


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} (rational)."""
    if not m:
        ncols = ncols or 0
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def solve(m: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of M x = b for square invertible M."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m, b)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n] for row in r[:n]]


def minor(m: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    return det([[m[i][j] for j in cols] for i in rows])


def maximal_minors(cols: Sequence[Sequence]) -> dict[tuple[int, ...], Fraction]:
    """Plucker coordinates of the column vectors: det(X[I, :]) for sorted I."""
    d = len(cols)
    n = len(cols[0])
    rows = transpose(cols)
    return {I: det([rows[i] for i in I]) for I in combinations(range(n), d)}


# ---------------------------------------------------------------- integers


def fraction_gcd(values) -> Fraction:
    """gcd of rationals: gcd of numerators over lcm of denominators."""
    num, den = 0, 1
    for v in values:
        v = Fraction(v)
        num = gcd(num, v.numerator)
        den = lcm(den, v.denominator)
    return Fraction(num, den)


def primitive_integer(v: Sequence) -> list[int]:
    """Scale a nonzero rational vector to a primitive integer vector (sign kept)."""
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    return [x // g for x in ints]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hnf(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column Hermite normal form.

    Returns (H, U) with M U = H, U unimodular and H in column echelon form:
    pivot rows strictly increase from column to column, pivots are positive,
    entries left of a pivot are reduced into [0, pivot), and zero columns
    come last.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_combine(a, b, s, t, p, q):
        # (col_a, col_b) <- (s a + t b, p a + q b)
        for mat in (h, u):
            for row in mat:
                x, y = row[a], row[b]
                row[a], row[b] = s * x + t * y, p * x + q * y

    def col_addmul(dst, src, f):
        for mat in (h, u):
            for row in mat:
                row[dst] += f * row[src]

    def col_neg(c):
        for mat in (h, u):
            for row in mat:
                row[c] = -row[c]

    k = 0
    for i in range(rows):
        if k == cols:
            break
        for j in range(k + 1, cols):
            y = h[i][j]
            if y == 0:
                continue
            x = h[i][k]
            g, s, t = _xgcd(x, y)
            col_combine(k, j, s, t, -y // g, x // g)
        if h[i][k] == 0:
            continue
        if h[i][k] < 0:
            col_neg(k)
        piv = h[i][k]
        for j in range(k):
            f = h[i][j] // piv
            if f:
                col_addmul(j, k, -f)
        k += 1
    return h, u


def hnf_basis(cols: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Canonical basis (nonzero HNF columns) of the lattice generated by ``cols``."""
    if not cols:
        return []
    h, _ = column_hnf(transpose(cols))
    basis = transpose(h)
    return [tuple(c) for c in basis if any(c)]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {x in Z^ncols : M x = 0}; the result spans a saturated lattice."""
    if not m:
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    h, u = column_hnf(m)
    ucols = transpose(u)
    hcols = transpose(h)
    return [tuple(ucols[j]) for j in range(ncols) if not any(hcols[j])]


def annihilator(cols: Sequence[Sequence], n: int) -> list[list[int]]:
    """Integer rows spanning the annihilator of span(cols) in (Q^n)*."""
    if not cols:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return [primitive_integer(v) for v in nullspace([list(c) for c in cols], n)]


def saturate(cols: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    """HNF basis of span_Q(cols) intersected with Z^n."""
    ann = annihilator(cols, n)
    if not ann:
        kernel = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    else:
        kernel = integer_kernel(ann, n)
    return hnf_basis(kernel)


def unimodular_completion(cols: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Vectors Y such that [cols | Y] is unimodular; ``cols`` must span a saturated lattice."""
    d = len(cols)
    if d == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    # X^T U = [H | 0] with H unimodular, so the last n - d columns of (U^-1)^T complete X.
    _, u = column_hnf([list(c) for c in cols])
    uinv_t = transpose(inverse(u))
    ycols = transpose(uinv_t)[d:]
    return [tuple(int(x) for x in c) for c in ycols]


def in_span(annihilator_rows: Sequence[Sequence[int]], v: Sequence) -> bool:
    return all(sum(a * x for a, x in zip(row, v)) == 0 for row in annihilator_rows)
