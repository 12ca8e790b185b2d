"""Gram matrices of the classical root lattices and their duals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .forms import FormError, GramForm

_NAME = re.compile(r"^([ZADE])(\d+)(\*?)$")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    gram: GramForm
    min: Fraction
    det: Fraction


def _tree_gram(n: int, edges) -> list[list[int]]:
    g = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return g


def _adjugate(rows) -> list[list[Fraction]]:
    d = la.det(rows)
    return [[d * x for x in r] for r in la.inverse(rows)]


def _build(kind: str, n: int, dual: bool) -> CatalogEntry:
    name = f"{kind}{n}{'*' if dual else ''}"
    if kind == "Z":
        if dual or n < 1:
            raise FormError(f"unknown lattice {name}")
        return CatalogEntry(name, n, GramForm(la.identity(n)), Fraction(1), Fraction(1))
    if kind == "A":
        if n < 1:
            raise FormError(f"unknown lattice {name}")
        base = [[1 + int(i == j) for j in range(n)] for i in range(n)]
        if not dual:
            return CatalogEntry(name, n, GramForm(base), Fraction(2), Fraction(n + 1))
        return CatalogEntry(name, n, GramForm(_adjugate(base)), Fraction(n), Fraction(n + 1) ** (n - 1))
    if kind == "D":
        if n < 3:
            raise FormError(f"unknown lattice {name} (D needs n >= 3)")
        base = _tree_gram(n, [(1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n)])
        if not dual:
            return CatalogEntry(name, n, GramForm(base), Fraction(2), Fraction(4))
        return CatalogEntry(name, n, GramForm(_adjugate(base)), Fraction(min(4, n)), Fraction(4) ** (n - 1))
    if kind == "E":
        if n != 8 or dual:
            raise FormError(f"unknown lattice {name} (only E8 is provided)")
        base = _tree_gram(8, [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)])
        return CatalogEntry(name, 8, GramForm(base), Fraction(2), Fraction(1))
    raise FormError(f"unknown lattice {name}")


def lookup(name: str) -> CatalogEntry:
    m = _NAME.match(name.strip())
    if not m:
        raise FormError(f"lattice names look like Z3, A3, A3*, D4, D5*, E8; got {name!r}")
    return _build(m.group(1), int(m.group(2)), bool(m.group(3)))


def catalog(max_n: int = 5) -> list[CatalogEntry]:
    """Every catalog lattice of dimension 2..max_n (plus E8 when max_n >= 8)."""
    out = []
    for n in range(2, max_n + 1):
        out.append(lookup(f"Z{n}"))
        out.append(lookup(f"A{n}"))
        out.append(lookup(f"A{n}*"))
        if n >= 3:
            out.append(lookup(f"D{n}"))
            out.append(lookup(f"D{n}*"))
    if max_n >= 8:
        out.append(lookup("E8"))
    return out


def self_test(entries=None) -> list[tuple[str, bool, str]]:
    """Check stored minimum and determinant of each entry with the enumeration engine."""
    from .enumeration import lattice_minimum

    if entries is None:
        entries = catalog(5) + [lookup("E8")]
    results = []
    for e in entries:
        det = e.gram.det()
        mn = lattice_minimum(e.gram.matrix)[0]
        ok = det == e.det and mn == e.min
        results.append((e.name, ok, f"min {mn} (stored {e.min}), det {det} (stored {e.det})"))
    return results
