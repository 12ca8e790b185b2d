"""Certified minima of A[X] over primitive flags.

Delta_d(X^T A X) is the norm of x_1 ^ ... ^ x_d under the exterior power
form, so saturated rank-d sublattices below a bound are exactly the
primitive decomposable short vectors of that form. Minimal flags are then
nested chains of such sublattices.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import _linalg as la
from .forms import (
    FlagVector,
    GramForm,
    HermiteInvariant,
    NotPositiveDefiniteError,
    as_gram,
    canonical_flag,
    evaluate,
    flag_from_chain,
    invariant,
)
from .partitions import Partition

CERTIFIED_MAX_N = 8
CERTIFIED_MAX_D = 4
_MARGIN = 2.0**-20


class CertifiedLimitError(RuntimeError):
    """The certified search would need an exterior power beyond the supported size."""


@dataclass(frozen=True)
class GrassmannForm:
    d: int
    subsets: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def norm(self, w: Sequence) -> Fraction:
        return Fraction(la.quadratic_form(self.gram, w))


def grassmann_form(form, d: int) -> GrassmannForm:
    """Gram matrix of the d-th exterior power: entry (I, J) is det A[I, J]."""
    a = as_gram(form).matrix
    n = len(a)
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in 1..{n}")
    subsets = tuple(combinations(range(n), d))
    gram = []
    for i, I in enumerate(subsets):
        row = []
        for j, J in enumerate(subsets):
            if j < i:
                row.append(gram[j][i])
            else:
                row.append(la.minor(a, I, J))
        gram.append(tuple(row))
    return GrassmannForm(d, subsets, tuple(gram))


def _sign_canonical(v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _fp_decomposition(g: Sequence[Sequence[Fraction]]) -> list[list[float]]:
    """Q with x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2 (floating point)."""
    n = len(g)
    q = [[float(x) for x in row] for row in g]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(g, bound) -> list[tuple[tuple[int, ...], Fraction]]:
    """All nonzero v (up to sign, first nonzero entry positive) with v^T G v <= bound.

    Enumeration runs in floating point with a relative margin of 2^-20; every
    candidate is then checked exactly. Sorted by (value, vector).
    """
    g = la.to_matrix(g)
    bound = Fraction(bound)
    n = len(g)
    if not la.is_symmetric(g) or not la.is_positive_definite(g):
        raise NotPositiveDefiniteError("short_vectors needs a positive definite matrix")
    if bound <= 0:
        return []
    q = _fp_decomposition(g)
    fb = float(bound) * (1 + _MARGIN) + 1e-12
    x = [0] * n
    found: list[tuple[int, ...]] = []

    def rec(i: int, budget: float, top: bool):
        # top: every coordinate above i is zero, so fix the sign here
        center = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        radius = math.sqrt(max(budget, 0.0) / q[i][i]) * (1 + _MARGIN) + 1e-9
        lo = math.ceil(center - radius)
        hi = math.floor(center + radius)
        if top:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            rest = budget - q[i][i] * (xi - center) ** 2
            if rest < -1e-9 * max(1.0, fb):
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    found.append(tuple(x))
            else:
                rec(i - 1, rest, top and xi == 0)
        x[i] = 0

    rec(n - 1, fb, True)
    out = []
    for v in found:
        val = Fraction(la.quadratic_form(g, v))
        if val <= bound:
            out.append((_sign_canonical(v), val))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def lattice_minimum(g) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Minimum of a positive definite form over nonzero integer vectors and its minimal vectors."""
    g = la.to_matrix(g)
    start = min(g[i][i] for i in range(len(g)))
    vecs = short_vectors(g, start)
    best = vecs[0][1]
    return best, [v for v, val in vecs if val == best]


@dataclass(frozen=True)
class SubspaceCandidate:
    d: int
    basis: tuple[tuple[int, ...], ...]
    value: Fraction
    plucker: tuple[int, ...] = ()

    def annihilator(self) -> list[list[int]]:
        return la.annihilator(self.basis, len(self.basis[0]))


def _wedge_matrix(w: Sequence[int], subsets, n: int, d: int) -> list[list[int]]:
    """Matrix of v -> v ^ w from Q^n to the (d+1)-th exterior power."""
    index = {I: k for k, I in enumerate(subsets)}
    rows = []
    for K in combinations(range(n), d + 1):
        row = [0] * n
        for pos, i in enumerate(K):
            J = K[:pos] + K[pos + 1 :]
            c = w[index[J]]
            if c:
                row[i] = c if pos % 2 == 0 else -c
        rows.append(row)
    return rows


def decomposable_subspaces(form, d: int, bound) -> list[SubspaceCandidate]:
    """All saturated rank-d sublattices V of Z^n with Delta_d(A|V) <= bound."""
    a = as_gram(form)
    n = a.n
    bound = Fraction(bound)
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in 1..{n}")
    if d == n:
        det = a.det()
        if det > bound:
            return []
        basis = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        return [SubspaceCandidate(n, basis, det, (1,))]
    if d == 1:
        out = []
        for v, val in short_vectors(a.matrix, bound):
            if math.gcd(*v) == 1:
                out.append(SubspaceCandidate(1, (v,), val, v))
        return out
    gf = grassmann_form(a, d)
    out = []
    seen = set()
    for w, val in short_vectors(gf.gram, bound):
        if math.gcd(*w) != 1:
            continue
        m = _wedge_matrix(w, gf.subsets, n, d)
        kernel = la.nullspace(m, n)
        if len(kernel) != d:
            continue
        basis = tuple(la.saturate(kernel, n))
        if basis in seen:
            continue
        seen.add(basis)
        out.append(SubspaceCandidate(d, basis, val, w))
    return out


@dataclass
class MinimaResult:
    shape: Partition
    minimum: Fraction
    witnesses: list[FlagVector]
    certified: bool
    bounds: dict[int, Fraction] = field(default_factory=dict)
    lower_bounds: dict[int, Fraction] = field(default_factory=dict)

    def invariant(self, form) -> HermiteInvariant:
        return invariant(form, self.shape, self.minimum)


def _root_upper(r: Fraction, c: int) -> Fraction:
    """A rational B with B**c >= r (close to the real root)."""
    if c == 1:
        return r
    if r <= 0:
        return Fraction(0)
    guess = Fraction(float(r) ** (1.0 / c)).limit_denominator(10**12)
    step = Fraction(1, 2**30)
    while guess**c < r:
        guess = guess * (1 + step) + step
        step *= 2
    return guess


def kz_basis(form) -> tuple[list[Fraction], list[tuple[int, ...]]]:
    """Greedy Korkine-Zolotareff basis: repeatedly take a shortest vector of the projected lattice.

    Returns (profile, basis columns) with prod(profile) = det.
    """
    a = as_gram(form)
    n = a.n
    basis = [list(col) for col in la.identity(n)]  # columns of the current basis of Z^n
    basis = [[int(x) for x in col] for col in basis]
    s = [list(r) for r in a.matrix]
    profile: list[Fraction] = []
    for i in range(n):
        k = n - i
        _, mins = lattice_minimum(s)
        v = list(mins[0])
        comp = la.unimodular_completion([v], k)
        c = [v] + [list(x) for x in comp]  # columns
        cm = la.columns_to_matrix(c)
        t = la.matmul(la.transpose(cm), la.matmul(s, cm))
        tail = basis[i:]
        new_tail = [[sum(col[j] * tail[j][r] for j in range(k)) for r in range(n)] for col in c]
        basis = basis[:i] + new_tail
        top = t[0][0]
        profile.append(Fraction(top))
        s = [[t[p][q] - t[p][0] * t[0][q] / top for q in range(1, k)] for p in range(1, k)]
    return profile, [tuple(b) for b in basis]


def kz_profile(form) -> list[Fraction]:
    return kz_basis(form)[0]


def _check_limits(n: int, dims: Sequence[int]):
    bad = [d for d in dims if d != n and d > CERTIFIED_MAX_D]
    if n > CERTIFIED_MAX_N or bad:
        raise CertifiedLimitError(
            f"certified search supports n <= {CERTIFIED_MAX_N} and column heights <= {CERTIFIED_MAX_D}; "
            f"got n={n}, heights {sorted(set(dims))} (use the heuristic mode)"
        )


def _heuristic_subspaces(a: GramForm, d: int, bound: Fraction, cap: int = 30) -> list[SubspaceCandidate]:
    """Subspaces spanned by d of the shortest vectors; a best-effort candidate list."""
    n = a.n
    if d == n:
        return decomposable_subspaces(a, d, bound)
    _, basis = kz_basis(a)
    radius = max(a.norm(b) for b in basis)
    vecs = [v for v, _ in short_vectors(a.matrix, radius)][:cap]
    out = {}
    for combo in combinations(vecs, d):
        if la.rank(la.columns_to_matrix(combo)) < d:
            continue
        sat = tuple(la.saturate(combo, n))
        if sat in out:
            continue
        val = la.det(la.gram(a.matrix, sat))
        if val <= bound:
            out[sat] = SubspaceCandidate(d, sat, val)
    return sorted(out.values(), key=lambda c: (c.value, c.basis))


def _enumerate_level(args):
    a, d, bound, certified = args
    if certified:
        return decomposable_subspaces(a, d, bound)
    return _heuristic_subspaces(a, d, bound)


def minimum(form, lam: Partition, certified: bool = True, threads: int = 1) -> MinimaResult:
    """m(A) = min of A[X] over primitive flag vectors X of shape lam, with all minimal flags."""
    a = as_gram(form)
    n = a.n
    lam.check_fits(n)
    mult = lam.column_multiplicities()
    dims = sorted(mult)
    if certified:
        _check_limits(n, dims)

    # (1) an upper bound from the standard flag and the greedy KZ flag
    _, kzb = kz_basis(a)
    start = min(
        (evaluate(a, f), f.columns, f)
        for f in (canonical_flag(lam, n), FlagVector(lam, kzb[: lam.height]).canonical())
    )
    upper, start_flag = start[0], start[2]

    # (2) lower bounds on each minor from the exterior power minima
    mu: dict[int, Fraction] = {}
    for d in dims:
        if d == n:
            mu[d] = a.det()
        elif d == 1:
            mu[d] = lattice_minimum(a.matrix)[0]
        else:
            mu[d] = lattice_minimum(grassmann_form(a, d).gram)[0]

    # (3) per-dimension cutoffs
    bounds: dict[int, Fraction] = {}
    for d in dims:
        others = Fraction(1)
        for e in dims:
            if e != d:
                others *= mu[e] ** mult[e]
        bounds[d] = _root_upper(upper / others, mult[d])

    # (4) candidates per height
    jobs = [(a, d, bounds[d], certified) for d in dims]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            levels = list(pool.map(_enumerate_level, jobs))
    else:
        levels = [_enumerate_level(j) for j in jobs]
    cands = {d: lv for d, lv in zip(dims, levels)}

    # (5) nested chains, largest height first
    order = sorted(dims, reverse=True)
    ann_cache: dict[tuple, list[list[int]]] = {}

    def ann(c: SubspaceCandidate):
        if c.basis not in ann_cache:
            ann_cache[c.basis] = c.annihilator()
        return ann_cache[c.basis]

    tail_lower = {}
    acc = Fraction(1)
    for d in reversed(order):
        tail_lower[d] = acc
        acc *= mu[d] ** mult[d]

    best = [upper]
    chains: list[tuple[Fraction, list[SubspaceCandidate]]] = []

    def dfs(level: int, container: SubspaceCandidate | None, partial: Fraction, chosen: list):
        if level == len(order):
            if partial < best[0]:
                best[0] = partial
            chains.append((partial, list(chosen)))
            return
        d = order[level]
        for c in cands[d]:
            val = partial * c.value ** mult[d]
            if val * tail_lower[d] > best[0]:
                continue
            if container is not None:
                rows = ann(container)
                if not all(la.in_span(rows, v) for v in c.basis):
                    continue
            chosen.append(c)
            dfs(level + 1, c, val, chosen)
            chosen.pop()

    dfs(0, None, Fraction(1), [])
    if not chains:
        if certified:
            raise RuntimeError("no flag found below the starting bound; enumeration is inconsistent")
        return MinimaResult(lam, upper, [start_flag], False, bounds, mu)
    m = min(v for v, _ in chains)
    witnesses = set()
    for v, chain in chains:
        if v == m:
            ordered = sorted(chain, key=lambda c: c.d)
            witnesses.add(flag_from_chain(lam, [c.basis for c in ordered]))
    wit = sorted(witnesses, key=lambda f: f.columns)
    for f in wit:
        if evaluate(a, f) != m:
            raise AssertionError("witness does not evaluate to the minimum")
    return MinimaResult(lam, m, wit, certified, bounds, mu)


def hermite_invariant(form, lam: Partition, certified: bool = True, threads: int = 1) -> HermiteInvariant:
    res = minimum(form, lam, certified=certified, threads=threads)
    return res.invariant(form)


__all__ = [
    "CertifiedLimitError",
    "GrassmannForm",
    "MinimaResult",
    "SubspaceCandidate",
    "decomposable_subspaces",
    "grassmann_form",
    "hermite_invariant",
    "kz_basis",
    "kz_profile",
    "lattice_minimum",
    "minimum",
    "short_vectors",
]
