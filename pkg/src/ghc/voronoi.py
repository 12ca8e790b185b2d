"""Gradients of length functions, perfection, eutaxy and extremality.

Length function of a flag: l_X(A) = log A[X]. Its gradient for the metric
<X, Y>_A = tr(A^-1 X A^-1 Y) is A (Pi - (m/n) I), where Pi is the sum of the
A-orthogonal projections onto the spans of the flag columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from ._lp import maximize
from .enumeration import minimum
from .forms import DegenerateFlagError, FlagVector, as_humbert
from .partitions import Partition

Matrix = list[list[Fraction]]


def projection(form, x: Sequence[Sequence]) -> Matrix:
    """p = X (X^T A X)^-1 X^T A for X given by its columns."""
    a = la.to_matrix(form.matrix if hasattr(form, "matrix") else form)
    cols = [list(c) for c in x]
    g = la.gram(a, cols)
    try:
        ginv = la.inverse(g)
    except ZeroDivisionError as exc:
        raise DegenerateFlagError("projection onto a rank-deficient family") from exc
    xm = la.columns_to_matrix(cols)
    return la.matmul(xm, la.matmul(ginv, la.matmul(la.transpose(xm), a)))


def projection_sum(form, flag: FlagVector) -> Matrix:
    """Pi = sum over columns l of the projection onto span(x_1..x_{lambda*_l})."""
    n = flag.n
    total = [[Fraction(0)] * n for _ in range(n)]
    cache: dict[int, Matrix] = {}
    for h in flag.shape.columns:
        if h not in cache:
            cache[h] = projection(form, flag.columns[:h])
        p = cache[h]
        total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, p)]
    return total


def gradient(form, flag: FlagVector) -> list[Matrix]:
    """[d_j A_j (Pi_j - (m/n) I)] over the places of the form."""
    h = as_humbert(form)
    c = Fraction(flag.shape.weight, h.n)
    out = []
    for place in h.places:
        a = la.to_matrix(place.form.matrix)
        pi = projection_sum(place.form, flag)
        shifted = [[pi[i][j] - (c if i == j else 0) for j in range(h.n)] for i in range(h.n)]
        out.append([[place.degree * x for x in row] for row in la.matmul(a, shifted)])
    return out


def metric(form, x: Sequence[Matrix], y: Sequence[Matrix]) -> Fraction:
    """<X, Y>_A = sum_j tr(A_j^-1 X_j A_j^-1 Y_j)."""
    h = as_humbert(form)
    total = Fraction(0)
    for place, xj, yj in zip(h.places, x, y):
        ainv = la.inverse(place.form.matrix)
        prod = la.matmul(la.matmul(ainv, xj), la.matmul(ainv, yj))
        total += sum(prod[i][i] for i in range(len(prod)))
    return total


def gradient_norm_sq(form, flag: FlagVector) -> Fraction:
    g = gradient(form, flag)
    return metric(form, g, g)


def closed_form_norm_sq(n: int, lam: Partition, r1: int = 1, r2: int = 0) -> Fraction:
    """(r1 + 4 r2) (sum_l (2l - 1) lambda*_l - m^2 / n)."""
    m = lam.weight
    s = sum((2 * l - 1) * h for l, h in enumerate(lam.columns, start=1))
    return (r1 + 4 * r2) * (Fraction(s) - Fraction(m * m, n))


@dataclass
class MinimalEntry:
    flag: FlagVector
    projections: list[Matrix]
    gradient: list[Matrix]


@dataclass
class MinimalSet:
    shape: Partition
    minimum: Fraction
    entries: list[MinimalEntry] = field(default_factory=list)
    certified: bool = True

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def flags(self) -> list[FlagVector]:
        return [e.flag for e in self.entries]


def minimal_set(form, lam: Partition, certified: bool = True) -> MinimalSet:
    h = as_humbert(form)
    res = minimum(h.gram, lam, certified=certified)
    entries = []
    for f in res.witnesses:
        pis = [projection_sum(p.form, f) for p in h.places]
        entries.append(MinimalEntry(f, pis, gradient(h, f)))
    return MinimalSet(lam, res.minimum, entries, res.certified)


def _flatten_sym(m: Matrix) -> list[Fraction]:
    n = len(m)
    return [m[i][j] for i in range(n) for j in range(i, n)]


def _family(form, ms: MinimalSet) -> list[list[Fraction]]:
    """A_j Pi_j for every minimal flag, flattened and stacked over places."""
    h = as_humbert(form)
    rows = []
    for e in ms.entries:
        vec = []
        for place, pi in zip(h.places, e.projections):
            vec.extend(_flatten_sym(la.matmul(la.to_matrix(place.form.matrix), pi)))
        rows.append(vec)
    return rows


@dataclass
class PerfectionReport:
    perfect: bool
    rank: int
    required: int


def is_perfect(form, lam: Partition, ms: MinimalSet | None = None) -> PerfectionReport:
    h = as_humbert(form)
    if ms is None:
        ms = minimal_set(h, lam)
    n = h.n
    required = h.r1 * n * (n + 1) // 2 + h.r2 * n * n - (h.r1 + h.r2) + 1
    r = la.rank(_family(h, ms))
    return PerfectionReport(r >= required, r, required)


@dataclass
class EutaxyReport:
    eutactic: bool
    epsilon: Fraction
    rho: list[Fraction] | None
    boundary: bool = False


def is_eutactic(form, lam: Partition, ms: MinimalSet | None = None) -> EutaxyReport:
    """Is (m/n) A a combination of the A Pi with strictly positive weights summing to 1?

    Exact LP: rho_i = eps + sigma_i with eps, sigma_i >= 0; maximise eps.
    """
    h = as_humbert(form)
    if ms is None:
        ms = minimal_set(h, lam)
    n = h.n
    c = Fraction(lam.weight, n)
    fam = _family(h, ms)
    k = len(fam)
    target = []
    for place in h.places:
        target.extend(_flatten_sym([[c * x for x in row] for row in place.form.matrix]))
    # columns: eps, sigma_1..sigma_k
    a_eq = []
    b_eq = []
    for coord in range(len(target)):
        a_eq.append([sum(f[coord] for f in fam)] + [f[coord] for f in fam])
        b_eq.append(target[coord])
    a_eq.append([Fraction(k)] + [Fraction(1)] * k)
    b_eq.append(Fraction(1))
    res = maximize([1] + [0] * k, a_eq, b_eq)
    if res.status != "optimal":
        return EutaxyReport(False, Fraction(0), None, False)
    eps = res.x[0]
    rho = [eps + s for s in res.x[1:]]
    return EutaxyReport(eps > 0, eps, rho, eps == 0)


def is_extreme(form, lam: Partition, ms: MinimalSet | None = None) -> bool:
    h = as_humbert(form)
    if ms is None:
        ms = minimal_set(h, lam)
    return is_perfect(h, lam, ms).perfect and is_eutactic(h, lam, ms).eutactic


@dataclass
class VoronoiReport:
    minimal_set: MinimalSet
    perfection: PerfectionReport
    eutaxy: EutaxyReport

    @property
    def extreme(self) -> bool:
        return self.perfection.perfect and self.eutaxy.eutactic


def voronoi_report(form, lam: Partition, certified: bool = True) -> VoronoiReport:
    h = as_humbert(form)
    ms = minimal_set(h, lam, certified=certified)
    return VoronoiReport(ms, is_perfect(h, lam, ms), is_eutactic(h, lam, ms))
