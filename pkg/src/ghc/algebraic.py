"""Exact products of rational powers, c * prod b_i ** e_i with rational e_i.

Hermite invariants divide by det ** (m/n), which is usually irrational. Rather
than rounding, values are kept symbolic and compared by raising both sides to
a common integer power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

import mpmath


def integer_root(x: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if x < 0 or k < 1:
        raise ValueError("integer_root needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    # Newton iteration from an upper bound
    r = 1 << ((x.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    return r if r**k == x else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    if q < 0:
        return None
    a = integer_root(q.numerator, k)
    b = integer_root(q.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


@dataclass(frozen=True)
class PowerProduct:
    """Positive real number coeff * prod(base ** exp); bases positive rationals."""

    coeff: Fraction
    factors: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        merged: dict[Fraction, Fraction] = {}
        for b, e in self.factors:
            b, e = Fraction(b), Fraction(e)
            if b <= 0:
                raise ValueError("bases must be positive")
            if b == 1 or e == 0:
                continue
            if e.denominator == 1:
                coeff *= b ** int(e)
                continue
            merged[b] = merged.get(b, Fraction(0)) + e
        if coeff <= 0:
            raise ValueError("PowerProduct represents positive numbers only")
        facs = []
        for b, e in sorted(merged.items()):
            # peel off integer parts so the stored exponents lie in (0, 1)
            whole = e.numerator // e.denominator
            if whole:
                coeff *= b**whole
                e -= whole
            if e:
                facs.append((b, e))
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "factors", tuple(facs))

    @classmethod
    def of(cls, x) -> "PowerProduct":
        if isinstance(x, PowerProduct):
            return x
        return cls(Fraction(x))

    @classmethod
    def power(cls, base, exp) -> "PowerProduct":
        return cls(Fraction(1), ((Fraction(base), Fraction(exp)),))

    def __mul__(self, other) -> "PowerProduct":
        other = PowerProduct.of(other)
        return PowerProduct(self.coeff * other.coeff, self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerProduct":
        return self * PowerProduct.of(other).inverse()

    def __rtruediv__(self, other) -> "PowerProduct":
        return PowerProduct.of(other) * self.inverse()

    def inverse(self) -> "PowerProduct":
        return PowerProduct(1 / self.coeff, tuple((b, -e) for b, e in self.factors))

    def __pow__(self, q) -> "PowerProduct":
        q = Fraction(q)
        facs = [(self.coeff, q)] + [(b, e * q) for b, e in self.factors]
        return PowerProduct(Fraction(1), tuple(facs))

    @property
    def denominator(self) -> int:
        """Smallest L with every exponent times L an integer."""
        return lcm(1, *(e.denominator for _, e in self.factors))

    def raised(self, k: int) -> Fraction:
        """self ** k as an exact rational; k must be a multiple of ``denominator``."""
        if k % self.denominator:
            raise ValueError(f"power {k} does not clear the exponents")
        out = self.coeff**k
        for b, e in self.factors:
            out *= b ** int(e * k)
        return out

    def rational_power(self) -> tuple[int, Fraction]:
        """Smallest q >= 1 with self ** q rational, together with that value."""
        big = self.denominator
        r = self.raised(big)
        for q in range(1, big + 1):
            if big % q:
                continue
            root = rational_root(r, big // q)
            if root is not None:
                return q, root
        return big, r  # not reached: q = big always succeeds

    def exact(self) -> Fraction | None:
        """The value as a Fraction when it is rational, else None."""
        q, val = self.rational_power()
        return val if q == 1 else None

    def _cmp(self, other) -> int:
        other = PowerProduct.of(other)
        k = lcm(self.denominator, other.denominator)
        a, b = self.raised(k), other.raised(k)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PowerProduct, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash(self.rational_power())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def to_mpf(self, dps: int = 40):
        with mpmath.workdps(dps):
            out = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            for b, e in self.factors:
                out *= (mpmath.mpf(b.numerator) / b.denominator) ** (mpmath.mpf(e.numerator) / e.denominator)
            return +out

    def __float__(self) -> float:
        return float(self.to_mpf())

    def interval(self, dps: int = 30):
        """Outward-rounded mpmath interval enclosing the value."""
        iv = mpmath.iv
        saved = iv.dps
        iv.dps = dps
        try:
            out = iv.mpf(self.coeff.numerator) / self.coeff.denominator
            for b, e in self.factors:
                base = iv.mpf(b.numerator) / b.denominator
                out *= iv.exp(iv.log(base) * (iv.mpf(e.numerator) / e.denominator))
            return out
        finally:
            iv.dps = saved

    def describe(self, symbol: str = "x") -> str:
        """'3/2' when rational, otherwise the defining power equation like 'x^3 = 2'."""
        q, val = self.rational_power()
        if q == 1:
            return str(val)
        return f"{symbol}^{q} = {val}"

    def __str__(self) -> str:
        return self.describe()

    def __repr__(self) -> str:
        return f"PowerProduct({self.coeff!r}, {self.factors!r})"


def product(values: Iterable) -> PowerProduct:
    out = PowerProduct(Fraction(1))
    for v in values:
        out = out * v
    return out
