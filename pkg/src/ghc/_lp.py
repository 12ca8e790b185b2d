"""Two-phase simplex over Fractions with Bland's rule.

Solves max c.x subject to A x = b, x >= 0. Small dense problems only; the
point is exactness, so the answer can serve as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, c: int):
    piv = rows[r][c]
    rows[r] = [v / piv for v in rows[r]]
    for i, row in enumerate(rows):
        if i != r and row[c]:
            f = row[c]
            rows[i] = [a - f * b for a, b in zip(row, rows[r])]
    if obj[c]:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, rows[r])]
    basis[r] = c


def _run(rows, obj, basis, allowed: int) -> str:
    """Maximise; obj holds reduced costs (entering when > 0) with -value in the last slot."""
    while True:
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(rows, obj, basis, best[1], enter)


def maximize(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    c = [Fraction(x) for x in c]
    nvar = len(c)
    a = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a_eq, b_eq)]
    # drop dependent equalities, detect inconsistency
    if a:
        r, piv = la.rref(a)
        if nvar in piv:
            return LPResult("infeasible")
        a = [row for row in r[: len(piv)]]
    m = len(a)
    for row in a:
        if row[-1] < 0:
            row[:] = [-x for x in row]
    # phase 1 with one artificial per row
    rows = [row[:nvar] + [Fraction(int(i == k)) for k in range(m)] + [row[-1]] for i, row in enumerate(a)]
    basis = [nvar + i for i in range(m)]
    obj = [Fraction(0)] * (nvar + m + 1)
    for row in rows:
        for j in range(nvar):
            obj[j] += row[j]
        obj[-1] += row[-1]
    _run(rows, obj, basis, nvar)
    if obj[-1] != 0:
        return LPResult("infeasible")
    # push artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= nvar:
            j = next((j for j in range(nvar) if rows[i][j] != 0), None)
            if j is None:
                continue
            _pivot(rows, obj, basis, i, j)
        keep.append(i)
    rows = [rows[i][:nvar] + [rows[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    obj = c + [Fraction(0)]
    for i, bvar in enumerate(basis):
        if obj[bvar]:
            f = obj[bvar]
            obj = [x - f * y for x, y in zip(obj, rows[i])]
    status = _run(rows, obj, basis, nvar)
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * nvar
    for i, bvar in enumerate(basis):
        x[bvar] = rows[i][-1]
    return LPResult("optimal", x, sum(ci * xi for ci, xi in zip(c, x)))
