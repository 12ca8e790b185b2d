"""Gram and Humbert forms, flag vectors, the evaluation A[X] and heights."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

from . import _linalg as la
from .algebraic import PowerProduct
from .partitions import Partition
from .schur import (
    SchurVector,
    VectorTableau,
    apolar_product,
    highest_weight_vector,
    phi_expand,
    schur_polynomial,
    straighten,
)


class FormError(ValueError):
    """Malformed form input (shape, symmetry, parse errors)."""


class NotPositiveDefiniteError(FormError):
    pass


class DegenerateFlagError(ValueError):
    pass


def _parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormError(f"bad rational entry {tok!r}") from exc


@dataclass(frozen=True)
class GramForm:
    """A symmetric positive definite rational matrix."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        try:
            mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormError(f"bad matrix entries: {exc}") from exc
        n = len(mat)
        if n == 0 or any(len(r) != n for r in mat):
            raise FormError("Gram matrix must be square and nonempty")
        if not la.is_symmetric(mat):
            raise FormError("Gram matrix is not symmetric")
        if not la.is_positive_definite(mat):
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def parse(cls, text: str) -> "GramForm":
        """First line n, then n rows of n rationals ("p/q" or integers)."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise FormError("empty Gram file")
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise FormError(f"first line must be the dimension, got {lines[0]!r}") from exc
        if n < 1 or len(lines) != n + 1:
            raise FormError(f"expected {n} matrix rows, got {len(lines) - 1}")
        rows = [[_parse_rational(tok) for tok in ln.split()] for ln in lines[1:]]
        if any(len(r) != n for r in rows):
            raise FormError("every row must have n entries")
        return cls(rows)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "GramForm":
        return cls.parse(Path(path).read_text())

    @property
    def n(self) -> int:
        return len(self.matrix)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.matrix]

    def det(self) -> Fraction:
        return la.det(self.matrix)

    def scaled(self, c) -> "GramForm":
        c = Fraction(c)
        return GramForm([[c * x for x in r] for r in self.matrix])

    def inverse(self) -> "GramForm":
        return GramForm(la.inverse(self.matrix))

    def transform(self, u: Sequence[Sequence]) -> "GramForm":
        """U^T A U."""
        return GramForm(la.matmul(la.transpose(u), la.matmul(self.matrix, u)))

    def norm(self, v: Sequence) -> Fraction:
        return Fraction(la.quadratic_form(self.matrix, v))

    def to_text(self) -> str:
        body = "\n".join(" ".join(str(x) for x in r) for r in self.matrix)
        return f"{self.n}\n{body}\n"


@dataclass(frozen=True)
class Place:
    form: GramForm
    degree: int = 1
    kind: str = "real"


@dataclass(frozen=True)
class HumbertForm:
    """Tuple of Gram forms, one per archimedean place; over Q a single real place."""

    places: tuple[Place, ...]

    def __post_init__(self):
        if not self.places:
            raise FormError("a Humbert form needs at least one place")
        ns = {p.form.n for p in self.places}
        if len(ns) != 1:
            raise FormError("all components must have the same size")
        for p in self.places:
            if p.kind not in ("real", "complex") or p.degree != (1 if p.kind == "real" else 2):
                raise FormError("real places have degree 1, complex places degree 2")

    @classmethod
    def rational(cls, form) -> "HumbertForm":
        return cls((Place(as_gram(form), 1, "real"),))

    @property
    def n(self) -> int:
        return self.places[0].form.n

    @property
    def r1(self) -> int:
        return sum(p.kind == "real" for p in self.places)

    @property
    def r2(self) -> int:
        return sum(p.kind == "complex" for p in self.places)

    def is_rational(self) -> bool:
        return len(self.places) == 1 and self.places[0].kind == "real"

    @property
    def gram(self) -> GramForm:
        if not self.is_rational():
            raise FormError("this operation needs a form over Q")
        return self.places[0].form


def as_gram(form) -> GramForm:
    if isinstance(form, GramForm):
        return form
    if isinstance(form, HumbertForm):
        return form.gram
    return GramForm(form)


def as_humbert(form) -> HumbertForm:
    if isinstance(form, HumbertForm):
        return form
    return HumbertForm.rational(as_gram(form))


# ---------------------------------------------------------------- flags


@dataclass(frozen=True)
class FlagVector:
    """Columns x_1..x_t of an n x t integer matrix; shape lambda fixes the flag type."""

    shape: Partition
    columns: tuple[tuple[int, ...], ...]

    def __init__(self, shape: Partition, columns: Iterable[Iterable]):
        cols = []
        for c in columns:
            fc = [Fraction(x) for x in c]
            if any(x.denominator != 1 for x in fc):
                raise FormError("flag vectors have integer entries")
            cols.append(tuple(int(x) for x in fc))
        cols = tuple(cols)
        if len(cols) != shape.height:
            raise FormError(f"shape {shape} needs {shape.height} columns, got {len(cols)}")
        if len({len(c) for c in cols}) != 1:
            raise FormError("columns must have equal length")
        if la.rank(la.columns_to_matrix(cols)) != len(cols):
            raise DegenerateFlagError("flag columns are linearly dependent")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "columns", cols)

    @property
    def n(self) -> int:
        return len(self.columns[0])

    def dims(self) -> list[int]:
        """Distinct column heights of the shape, increasing."""
        return sorted(set(self.shape.columns))

    def subspace(self, d: int) -> list[tuple[int, ...]]:
        return list(self.columns[:d])

    def chain(self) -> list[list[tuple[int, ...]]]:
        """Saturated HNF bases of span(x_1..x_d) for each distinct height d."""
        return [la.saturate(self.subspace(d), self.n) for d in self.dims()]

    def canonical(self) -> "FlagVector":
        return flag_from_chain(self.shape, self.chain())

    def is_canonical(self) -> bool:
        return self == self.canonical()

    def vector_tableau(self) -> VectorTableau:
        return VectorTableau.from_flag(self.shape, self.columns)

    def encode(self) -> list[list[int]]:
        return [list(c) for c in self.columns]


def _reduce_mod(v: list[int], hnf: Sequence[Sequence[int]]) -> list[int]:
    """Reduce v modulo the lattice with column-echelon HNF basis ``hnf``."""
    v = list(v)
    for h in hnf:
        r = next(i for i, x in enumerate(h) if x)
        f = v[r] // h[r]
        if f:
            v = [a - f * b for a, b in zip(v, h)]
    return v


def flag_from_chain(shape: Partition, chain: Sequence[Sequence[Sequence[int]]]) -> FlagVector:
    """Canonical flag vector of a chain V_{d_1} < V_{d_2} < ... of saturated sublattices.

    The smallest space gets its HNF basis. Each step adds the HNF basis of
    the image of the next space in Z^n / V_prev, lifted, reduced modulo
    V_prev and signed so the first nonzero entry is positive. The output
    depends only on the chain.
    """
    dims = sorted(set(shape.columns))
    if len(chain) != len(dims):
        raise FormError("chain length does not match the shape")
    n = len(chain[0][0])
    basis: list[tuple[int, ...]] = []
    prev_hnf: list[tuple[int, ...]] = []
    for d, space in zip(dims, chain):
        space_hnf = la.hnf_basis(space)
        if len(space_hnf) != d:
            raise DegenerateFlagError(f"subspace has rank {len(space_hnf)}, expected {d}")
        if not prev_hnf:
            basis = list(space_hnf)
        else:
            if any(not la.in_span(la.annihilator(space_hnf, n), v) for v in prev_hnf):
                raise DegenerateFlagError("chain is not nested")
            comp = la.unimodular_completion(prev_hnf, n)
            w = la.columns_to_matrix(list(prev_hnf) + list(comp))
            winv = la.inverse(w)
            k = len(prev_hnf)
            # quotient coordinates of the new space
            images = [[int(x) for x in la.matvec(winv, v)[k:]] for v in space_hnf]
            quot = la.hnf_basis(images)
            for b in quot:
                y = [sum(c[i] * b[j] for j, c in enumerate(comp)) for i in range(n)]
                y = _reduce_mod(y, prev_hnf)
                lead = next(v for v in y if v)
                if lead < 0:
                    y = [-v for v in y]
                basis.append(tuple(y))
        prev_hnf = la.hnf_basis(basis)
    return FlagVector(shape, basis)


def canonical_flag(shape: Partition, n: int) -> FlagVector:
    """The standard flag e_1, ..., e_t."""
    return FlagVector(shape, [tuple(int(i == j) for i in range(n)) for j in range(shape.height)])


# ---------------------------------------------------------------- evaluation


def evaluate(form, x: FlagVector) -> Fraction:
    """A[X] = prod over places and columns of Delta_{lambda*_l}(X^T A X) ** d_j."""
    a = as_humbert(form)
    if x.n != a.n:
        raise FormError("flag and form sizes differ")
    out = Fraction(1)
    for place in a.places:
        minors = la.leading_minors(la.gram(place.form.matrix, x.columns))
        for h in x.shape.columns:
            delta = minors[h - 1]
            if delta <= 0:
                raise DegenerateFlagError("degenerate flag: vanishing minor")
            out *= delta**place.degree
    return out


def evaluate_columns(form, shape: Partition, columns: Sequence[Sequence]) -> Fraction:
    """A[X] for raw (possibly rational or non-primitive) columns."""
    a = as_gram(form)
    minors = la.leading_minors(la.gram(a.matrix, columns))
    out = Fraction(1)
    for h in shape.columns:
        if minors[h - 1] == 0:
            raise DegenerateFlagError("degenerate flag: vanishing minor")
        out *= minors[h - 1]
    return out


@dataclass(frozen=True)
class ContentIdeal:
    """Over Q the fractional ideal of a flag is principal, generated by ``generator`` > 0."""

    generator: Fraction

    def norm(self) -> Fraction:
        return self.generator

    def is_unit(self) -> bool:
        return self.generator == 1


def content(x: Union[FlagVector, SchurVector, VectorTableau], shape: Partition | None = None) -> ContentIdeal:
    """gcd of the semistandard coordinates."""
    if isinstance(x, FlagVector):
        v = straighten(x.vector_tableau())
    elif isinstance(x, VectorTableau):
        v = straighten(x)
    elif isinstance(x, SchurVector):
        v = x
    else:
        if shape is None:
            raise TypeError("raw columns need a shape")
        v = straighten(VectorTableau.from_flag(shape, x))
    if v.is_zero():
        raise DegenerateFlagError("zero vector has no content")
    return ContentIdeal(la.fraction_gcd(v.coords.values()))


def det_L(form) -> Fraction:
    a = as_humbert(form)
    out = Fraction(1)
    for p in a.places:
        out *= p.form.det() ** p.degree
    return out


@dataclass(frozen=True)
class HermiteInvariant:
    """gamma = minimum / det ** (m/n), kept exact as a PowerProduct."""

    minimum: Fraction
    det: Fraction
    exponent: Fraction

    @property
    def value(self) -> PowerProduct:
        return PowerProduct(self.minimum, ((self.det, -self.exponent),))

    def exact(self) -> Fraction | None:
        return self.value.exact()

    def __float__(self) -> float:
        return float(self.value)

    def describe(self) -> str:
        return self.value.describe("gamma")

    def __eq__(self, other) -> bool:
        if isinstance(other, HermiteInvariant):
            other = other.value
        if not isinstance(other, (PowerProduct, int, Fraction)):
            return NotImplemented
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < (other.value if isinstance(other, HermiteInvariant) else other)

    def __le__(self, other):
        return self.value <= (other.value if isinstance(other, HermiteInvariant) else other)


def invariant(form, lam: Partition, minimum) -> HermiteInvariant:
    a = as_humbert(form)
    return HermiteInvariant(Fraction(minimum), det_L(a), Fraction(lam.weight, a.n))


def length_function(form, x: FlagVector) -> float:
    """log A[X] for a primitive flag over Z^n."""
    v = evaluate(form, x)
    return math.log(v.numerator) - math.log(v.denominator)


# ---------------------------------------------------------------- heights


def _flag_polynomial(x: Union[FlagVector, SchurVector]):
    if isinstance(x, FlagVector):
        return phi_expand(x.vector_tableau())
    return schur_polynomial(x)


def archimedean_height(g: Sequence[Sequence], x: Union[FlagVector, SchurVector], shape: Partition | None = None) -> Fraction:
    """Squared height of pi(g) x via the apolar product, normalised so e_U has height 1."""
    g = la.to_matrix(g)
    if la.det(g) == 0:
        raise ValueError("g is singular")
    lam = x.shape if shape is None else shape
    n = len(g)
    poly = _flag_polynomial(x).substitute(g)
    u = _flag_polynomial(highest_weight_vector(lam, n))
    return apolar_product(poly, poly) / apolar_product(u, u)


def height_by_minors(g: Sequence[Sequence], lam: Partition, x: FlagVector | None = None) -> Fraction:
    """prod_l Delta_{lambda*_l}((gX)^T (gX)); X defaults to the standard flag (e_U)."""
    g = la.to_matrix(g)
    if la.det(g) == 0:
        raise ValueError("g is singular")
    n = len(g)
    gtg = la.matmul(la.transpose(g), g)
    if x is None:
        minors = la.leading_minors(gtg)
    else:
        minors = la.leading_minors(la.gram(gtg, x.columns))
    out = Fraction(1)
    for h in lam.columns:
        out *= minors[h - 1]
    return out


def finite_height(x: Union[FlagVector, SchurVector], p: int) -> Fraction:
    """Max p-adic absolute value of the semistandard coordinates."""
    v = straighten(x.vector_tableau()) if isinstance(x, FlagVector) else x
    best = Fraction(0)
    for c in v.coords.values():
        val = Fraction(1)
        num, den = c.numerator, c.denominator
        while num % p == 0:
            num //= p
            val /= p
        while den % p == 0:
            den //= p
            val *= p
        best = max(best, val)
    return best
