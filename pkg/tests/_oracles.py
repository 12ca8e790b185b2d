"""Independent reference computations used only by the tests.

None of these call the straightening or enumeration code they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

import numpy as np

from ghc import _linalg as la
from ghc.partitions import Partition, enumerate_ssyt
from ghc.schur import Polynomial, VectorTableau, phi_T, phi_expand


# ------------------------------------------------------------ schur oracles


class PhiCoordinateOracle:
    """Coordinates of a polynomial in the basis {phi_T} by solving a linear system.

    Picks dim-many monomials whose coefficient matrix is invertible (greedy
    pivoting), inverts that square matrix once and reuses it.
    """

    def __init__(self, lam: Partition, n: int):
        self.lam, self.n = lam, n
        self.basis = enumerate_ssyt(lam, n)
        polys = [phi_T(t, n) for t in self.basis]
        monos = sorted({k for p in polys for k in p.terms})
        chosen: list = []
        rows: list[list[Fraction]] = []
        for mono in monos:
            row = [p.terms.get(mono, Fraction(0)) for p in polys]
            if la.rank(rows + [row]) > len(rows):
                rows.append(row)
                chosen.append(mono)
            if len(rows) == len(polys):
                break
        assert len(rows) == len(polys), "phi_T are not linearly independent"
        self.monos = chosen
        self.inv = la.inverse(rows)
        self.polys = polys

    def coordinates(self, poly: Polynomial) -> dict:
        rhs = [poly.terms.get(m, Fraction(0)) for m in self.monos]
        sol = la.matvec(self.inv, rhs)
        # the system only used dim monomials; confirm the full identity
        recon = Polynomial(poly.t, poly.n, {})
        for c, p in zip(sol, self.polys):
            if c:
                recon = recon + p.scale(c)
        assert recon == poly, "polynomial is not in the span of the phi_T"
        return {t: c for t, c in zip(self.basis, sol) if c}


def apolar_by_differentiation(p: Polynomial, q: Polynomial) -> Fraction:
    """L_0(P(d) Q): apply P as a differential operator to Q, evaluate at zero."""
    total = Fraction(0)
    for kp, cp in p.terms.items():
        for kq, cq in q.terms.items():
            if any(a > b for a, b in zip(kp, kq)):
                continue
            rest = [b - a for a, b in zip(kp, kq)]
            if any(rest):
                continue  # a monomial left over vanishes at zero
            w = 1
            for a in kp:
                w *= factorial(a)
            total += cp * cq * w
    return total


def random_vector_tableau(rng: random.Random, lam: Partition, n: int, lo: int = -3, hi: int = 3) -> VectorTableau:
    cells = [[[rng.randint(lo, hi) for _ in range(n)] for _ in range(h)] for h in lam.columns]
    return VectorTableau(lam, cells)


def partitions_up_to(m_max: int, n_max: int):
    """All partitions with weight <= m_max and at most n_max parts."""

    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in rec(rem - p, p):
                yield (p,) + rest

    for m in range(1, m_max + 1):
        for parts in rec(m, m):
            if len(parts) <= n_max:
                yield Partition(parts)


# ------------------------------------------------------------ lattice oracles


def random_pd_matrix(rng: random.Random, n: int, bound: int = 5) -> list[list[int]]:
    while True:
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-bound, bound)
                m[i][j] = m[j][i] = v
        if la.is_positive_definite(m):
            return m


def box_vectors(n: int, r: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(-r, r + 1), repeat=n)), dtype=np.int64)
    return pts[np.any(pts != 0, axis=1)]


def brute_short_vectors(g, bound, r: int = 4) -> set:
    """Sign-canonical integer vectors of the box with v^T G v <= bound (exact via Fractions)."""
    g = [[Fraction(x) for x in row] for row in g]
    out = set()
    for v in itertools.product(range(-r, r + 1), repeat=len(g)):
        if not any(v):
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        if la.quadratic_form(g, v) <= bound:
            out.add(tuple(v))
    return out


def brute_minimum_21(a, r: int = 4) -> int:
    """min over x1, x2 in [-r, r]^3 of A[x1] * det Gram(x1, x2), for integer A (exact int64)."""
    a = np.array(a, dtype=np.int64)
    pts = box_vectors(3, r)
    q = np.einsum("ij,jk,ik->i", pts, a, pts)
    b = pts @ a @ pts.T  # pairwise inner products
    d2 = q[:, None] * q[None, :] - b * b
    vals = q[:, None] * d2
    vals = np.where(d2 > 0, vals, np.iinfo(np.int64).max)
    return int(vals.min())


def brute_minimum(a, lam: Partition, r: int = 2) -> Fraction:
    """Exhaustive minimum of A[X] over full-rank X with entries in [-r, r] (any shape, tiny n)."""
    a = [[Fraction(x) for x in row] for row in a]
    n = len(a)
    vecs = [v for v in itertools.product(range(-r, r + 1), repeat=n) if any(v)]
    t = lam.height
    best = None
    for cols in itertools.product(vecs, repeat=t):
        minors = la.leading_minors(la.gram(a, cols))
        if any(m == 0 for m in minors[:t]):
            continue
        val = Fraction(1)
        for h in lam.columns:
            val *= minors[h - 1]
        if best is None or val < best:
            best = val
    return best


def brute_saturated_planes(a, bound, r: int = 2) -> dict:
    """Saturated rank-2 sublattices of Z^3 spanned by box vectors, keyed by HNF basis, with Delta_2 <= bound."""
    a = [[Fraction(x) for x in row] for row in a]
    vecs = [v for v in itertools.product(range(-r, r + 1), repeat=3) if any(v)]
    out = {}
    for u, v in itertools.combinations(vecs, 2):
        if la.rank([list(u), list(v)]) < 2:
            continue
        sat = tuple(la.saturate([u, v], 3))
        if sat in out:
            continue
        val = la.det(la.gram(a, sat))
        if val <= bound:
            out[sat] = val
    return out


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        f = rng.choice([-2, -1, 1, 2])
        for row in u:
            row[i] += f * row[j]
    return u
