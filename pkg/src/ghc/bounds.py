"""Inequalities between invariants: duality, Mordell, Minkowski, Berge-Martinet, base change.

Sides that are products of rational powers are compared exactly. Sides that
involve pi are compared with outward-rounded mpmath intervals, so "holds" is
never reported because of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import mpmath

from . import _linalg as la
from .algebraic import PowerProduct
from .catalog import CatalogEntry, catalog
from .enumeration import hermite_invariant, lattice_minimum, minimum
from .forms import GramForm, HermiteInvariant, as_gram
from .partitions import Partition, complement

Number = Union[Fraction, int, PowerProduct, HermiteInvariant]


def _pp(x: Number) -> PowerProduct:
    if isinstance(x, HermiteInvariant):
        return x.value
    return PowerProduct.of(x)


@dataclass
class BoundReport:
    name: str
    lhs: str
    rhs: str
    holds: bool
    slack: float
    provenance: dict[str, str] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)
    lhs_float: float = 0.0
    rhs_float: float = 0.0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhs_float": self.lhs_float,
            "rhs_float": self.rhs_float,
            "holds": self.holds,
            "slack": self.slack,
            "provenance": dict(self.provenance),
            "details": list(self.details),
        }


def _exact_report(name: str, lhs: PowerProduct, rhs: PowerProduct, provenance, details=(), equality=False) -> BoundReport:
    holds = lhs == rhs if equality else lhs <= rhs
    lf, rf = float(lhs), float(rhs)
    return BoundReport(name, lhs.describe("x"), rhs.describe("x"), holds, rf - lf, dict(provenance), list(details), lf, rf)


def dual_form(form) -> GramForm:
    """Integral multiple of A^-1 (the scale does not change any invariant)."""
    a = as_gram(form)
    inv = la.inverse(a.matrix)
    den = math.lcm(*(x.denominator for row in inv for x in row))
    return GramForm([[x * den for x in row] for row in inv])


# ---------------------------------------------------------------- duality


def duality_pair(form, lam: Partition, certified: bool = True) -> tuple[HermiteInvariant, HermiteInvariant]:
    """(gamma_lam(A), gamma_complement(A^-1))."""
    a = as_gram(form)
    lam_bar = complement(lam, a.n)
    return (
        hermite_invariant(a, lam, certified=certified),
        hermite_invariant(dual_form(a), lam_bar, certified=certified),
    )


def check_duality(lam: Partition, n: int, entries: Iterable[CatalogEntry] | None = None) -> BoundReport:
    """Best invariant for lam against best invariant for its complement over a catalog closed under duality.

    Each form also gives the pair gamma_lam(A) = gamma_complement(A^-1), which
    must hold exactly.
    """
    if entries is None:
        entries = [e for e in catalog(max(n, 2)) if e.n == n]
    entries = list(entries)
    lam_bar = complement(lam, n)
    best_l: PowerProduct | None = None
    best_r: PowerProduct | None = None
    details = []
    pairs_ok = True
    for e in entries:
        g1, g2 = duality_pair(e.gram, lam)
        ok = g1 == g2
        pairs_ok &= ok
        details.append(f"{e.name}: gamma_{lam}(A) {g1.describe()} vs gamma_{lam_bar}(A^-1) {g2.describe()}: {'equal' if ok else 'DIFFERENT'}")
        v1 = g1.value
        v2 = hermite_invariant(e.gram, lam_bar).value
        best_l = v1 if best_l is None or v1 > best_l else best_l
        best_r = v2 if best_r is None or v2 > best_r else best_r
    rep = _exact_report(
        "duality",
        best_l,
        best_r,
        {"lhs": f"max over catalog of gamma_{lam}", "rhs": f"max over catalog of gamma_{lam_bar}"},
        details,
        equality=True,
    )
    rep.holds = rep.holds and pairs_ok
    return rep


# ---------------------------------------------------------------- Mordell


def check_mordell(gamma_n_lam: Number, gamma_m_lam: Number, gamma_n_m: Number, n: int, m: int, lam: Partition) -> BoundReport:
    """gamma_{n,lam} <= gamma_{m,lam} * gamma_{n,m} ** (|lam| / m)."""
    if not lam.height <= m <= n:
        raise ValueError("need height(lam) <= m <= n")
    lhs = _pp(gamma_n_lam)
    rhs = _pp(gamma_m_lam) * _pp(gamma_n_m) ** Fraction(lam.weight, m)
    return _exact_report("mordell", lhs, rhs, {"n": str(n), "m": str(m), "partition": str(lam)})


def _restricted(form, basis) -> GramForm:
    return GramForm(la.gram(as_gram(form).matrix, basis))


def mordell_for_form(form, m: int, lam: Partition) -> BoundReport:
    """Per-form inequality: restrict to a sublattice W of rank m with minimal determinant."""
    a = as_gram(form)
    rankin = Partition([1] * m)
    res = minimum(a, rankin)
    w = res.witnesses[0].columns
    aw = _restricted(a, w)
    g_n_lam = hermite_invariant(a, lam)
    g_m_lam = hermite_invariant(aw, lam)
    g_n_m = res.invariant(a)
    return check_mordell(g_n_lam, g_m_lam, g_n_m, a.n, m, lam)


def mordell_over_catalog(n: int, m: int, lam: Partition, max_n: int | None = None) -> BoundReport:
    """Catalog maxima on each side; the m-side also sees the minimal sublattices of the n-forms."""
    cat = catalog(max(n, 2) if max_n is None else max_n)
    forms_n = [e for e in cat if e.n == n]
    forms_m = [e.gram for e in cat if e.n == m] if m > 1 else [GramForm([[1]])]
    best_n = max(hermite_invariant(e.gram, lam).value for e in forms_n)
    best_nm = max(minimum(e.gram, Partition([1] * m)).invariant(e.gram).value for e in forms_n)
    rankin = Partition([1] * m)
    for e in forms_n:
        forms_m.append(_restricted(e.gram, minimum(e.gram, rankin).witnesses[0].columns))
    best_m = max(hermite_invariant(f, lam).value for f in forms_m)
    rep = check_mordell(best_n, best_m, best_nm, n, m, lam)
    rep.provenance["source"] = "catalog maxima"
    return rep


# ---------------------------------------------------------------- Minkowski


def ball_volume(n: int):
    """Volume of the unit ball in R^n as an mpmath interval."""
    iv = mpmath.iv
    k, odd = divmod(n, 2)
    if not odd:
        return iv.pi**k / mpmath.factorial(k)
    return iv.mpf(2) ** (2 * k + 1) * mpmath.factorial(k) * iv.pi**k / mpmath.factorial(2 * k + 1)


def check_minkowski(gamma: Number, n: int, lam: Partition, r1: int = 1, r2: int = 0, disc: int = 1) -> BoundReport:
    """gamma ** (1 / (2|lam|)) <= 2^r |D|^(1/2) / (V(n)^(r1/n) V(2n)^(r2/n))."""
    iv = mpmath.iv
    saved = iv.dps
    iv.dps = 30
    try:
        g = _pp(gamma)
        lhs = g.interval(30) ** (iv.mpf(1) / (2 * lam.weight))
        r = r1 + r2
        rhs = iv.mpf(2) ** r * iv.sqrt(iv.mpf(abs(disc)))
        if r1:
            rhs = rhs / ball_volume(n) ** (iv.mpf(r1) / n)
        if r2:
            rhs = rhs / ball_volume(2 * n) ** (iv.mpf(r2) / n)
        holds = bool(lhs.b <= rhs.a)
        lo = float(mpmath.mpf(lhs.b))
        hi = float(mpmath.mpf(rhs.a))
    finally:
        iv.dps = saved
    return BoundReport(
        "minkowski",
        f"({g.describe('x')})^(1/{2 * lam.weight})",
        f"2^{r1 + r2} |D|^(1/2) / V(n)^(r1/n) V(2n)^(r2/n), n={n}",
        holds,
        hi - lo,
        {"lhs": "outward-rounded interval, upper end", "rhs": "outward-rounded interval, lower end"},
        [],
        lo,
        hi,
    )


# ---------------------------------------------------------------- Berge-Martinet


def berge_martinet_partition(n: int) -> Partition:
    """The partition with column heights (n - 1, 1)."""
    if n < 2:
        raise ValueError("needs n >= 2")
    return Partition.from_columns([n - 1, 1])


def check_berge_martinet(form) -> BoundReport:
    """min(A) * min(A^-1) <= m_kappa(A) / det(A), per form."""
    a = as_gram(form)
    n = a.n
    kappa = berge_martinet_partition(n)
    ma = lattice_minimum(a.matrix)[0]
    mstar = lattice_minimum(la.inverse(a.matrix))[0]
    mk = minimum(a, kappa).minimum
    lhs = PowerProduct.of(ma * mstar)
    rhs = PowerProduct.of(mk / a.det())
    return _exact_report(
        "berge-martinet",
        lhs,
        rhs,
        {"lhs": f"min(A)={ma}, min(A^-1)={mstar}", "rhs": f"m_kappa(A)={mk}, det={a.det()}, kappa={kappa}"},
    )


# ---------------------------------------------------------------- base change


def base_change_bound(gamma: Number, d: int, disc: int, m: int) -> PowerProduct:
    """|D|^m * gamma^d / d^d."""
    if d < 1:
        raise ValueError("degree must be positive")
    return PowerProduct.of(Fraction(abs(disc)) ** m / Fraction(d) ** d) * _pp(gamma) ** d


def minkowski_for_form(form, lam: Partition) -> BoundReport:
    a = as_gram(form)
    return check_minkowski(hermite_invariant(a, lam), a.n, lam)


__all__ = [
    "BoundReport",
    "base_change_bound",
    "ball_volume",
    "berge_martinet_partition",
    "check_berge_martinet",
    "check_duality",
    "check_minkowski",
    "check_mordell",
    "dual_form",
    "duality_pair",
    "minkowski_for_form",
    "mordell_for_form",
    "mordell_over_catalog",
]
