import math
from fractions import Fraction

import mpmath
import pytest
from scipy.special import gamma as gamma_fn

from ghc import _linalg as la
from ghc.algebraic import PowerProduct
from ghc.bounds import (
    ball_volume,
    base_change_bound,
    berge_martinet_partition,
    check_berge_martinet,
    check_duality,
    check_minkowski,
    check_mordell,
    dual_form,
    duality_pair,
    minkowski_for_form,
    mordell_for_form,
    mordell_over_catalog,
)
from ghc.catalog import catalog, lookup
from ghc.enumeration import hermite_invariant
from ghc.forms import GramForm
from ghc.partitions import Partition

from _oracles import brute_minimum

A3 = [[2, 1, 1], [1, 2, 1], [1, 1, 2]]


def P(*parts):
    return Partition(parts)


class TestDuality:
    def test_a3_against_dual(self):
        # gamma_(1)(A3)^3 = 2^3 / 4 and gamma_(1,1)(A3*)^3 = m^3 / det^2 with det 16
        a3s = lookup("A3*").gram
        assert brute_minimum(a3s.matrix, P(1, 1), r=2) == 8
        g1, g2 = duality_pair(GramForm(A3), P(1))
        assert g1 == g2
        assert g1.value.raised(3) == 2
        assert hermite_invariant(a3s, P(1, 1)).value.raised(3) == 2

    def test_dual_form_is_integral_multiple(self):
        d = dual_form(GramForm(A3))
        assert all(x.denominator == 1 for row in d.matrix for x in row)
        prod = la.matmul(d.matrix, A3)
        assert all(prod[i][j] == (prod[0][0] if i == j else 0) for i in range(3) for j in range(3))

    def test_self_complementary(self):
        rep = check_duality(P(2, 1), 3)
        assert rep.holds
        assert all("equal" in d for d in rep.details)

    def test_n2(self):
        assert check_duality(P(1), 2).holds

    def test_n3_line(self):
        rep = check_duality(P(1), 3)
        assert rep.holds and rep.lhs == rep.rhs == "x^3 = 2"


class TestMordell:
    def test_degenerate_m_equals_n(self):
        # gamma_{n,n} is 1 and the inequality becomes an equality
        rep = check_mordell(Fraction(3, 2), Fraction(3, 2), 1, 3, 3, P(2, 1))
        assert rep.holds and rep.slack == 0

    def test_range(self):
        with pytest.raises(ValueError):
            check_mordell(1, 1, 1, 3, 1, P(2, 1))

    def test_classical(self):
        rep = mordell_over_catalog(4, 3, P(1))
        assert rep.holds

    def test_21(self):
        assert mordell_over_catalog(3, 2, P(2, 1)).holds

    def test_per_form(self):
        for name in ["A3", "A3*", "D4", "Z3"]:
            g = lookup(name).gram
            for m in range(2, g.n):
                for lam in [P(1), P(2, 1)]:
                    if lam.height <= m:
                        assert mordell_for_form(g, m, lam).holds, (name, m, lam)

    def test_exact_equality_case(self):
        # D4 with m = 3: both sides equal sqrt(2)
        rep = mordell_for_form(lookup("D4").gram, 3, P(1))
        assert rep.holds and abs(rep.slack) < 1e-12


class TestMinkowski:
    def test_ball_volume(self):
        for n in range(1, 9):
            v = ball_volume(n)
            want = math.pi ** (n / 2) / gamma_fn(n / 2 + 1)
            assert v.a <= want * (1 + 1e-12) and want * (1 - 1e-12) <= v.b

    @pytest.mark.parametrize(
        "gamma,n,lam",
        [
            (Fraction(3, 2), 3, P(2, 1)),
            (Fraction(2), 4, Partition.from_columns([3, 1])),
            (PowerProduct(Fraction(2), ((Fraction(3), Fraction(-1, 2)),)), 2, P(1)),
        ],
    )
    def test_examples(self, gamma, n, lam):
        rep = check_minkowski(gamma, n, lam)
        assert rep.holds and rep.slack > 0

    def test_example_values(self):
        rep = check_minkowski(Fraction(3, 2), 3, P(2, 1))
        assert rep.lhs_float == pytest.approx(1.5 ** (1 / 6), rel=1e-9)
        assert rep.rhs_float == pytest.approx(2 / (4 * math.pi / 3) ** (1 / 3), rel=1e-9)

    def test_fails_when_too_large(self):
        assert not check_minkowski(Fraction(100), 2, P(1)).holds

    def test_catalog(self):
        for e in catalog(4):
            assert minkowski_for_form(e.gram, P(1)).holds


class TestBergeMartinet:
    def test_partition(self):
        assert berge_martinet_partition(4).columns == (3, 1)
        with pytest.raises(ValueError):
            berge_martinet_partition(1)

    def test_identity(self):
        rep = check_berge_martinet(GramForm(la.identity(3)))
        assert rep.holds and rep.slack == 0

    @pytest.mark.parametrize("name", ["A3", "D4", "A3*", "A2"])
    def test_catalog(self, name):
        assert check_berge_martinet(lookup(name).gram).holds


class TestBaseChange:
    def test_examples(self):
        assert base_change_bound(Fraction(7, 5), 1, 1, 3).exact() == Fraction(7, 5)
        assert base_change_bound(2, 2, -3, 1).exact() == 3
        assert base_change_bound(Fraction(3, 2), 2, -4, 2).exact() == 9

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            base_change_bound(1, 0, 1, 1)


def test_report_json():
    rep = check_minkowski(Fraction(3, 2), 3, P(2, 1))
    data = rep.to_json()
    assert data["holds"] is True and data["name"] == "minkowski"
    assert isinstance(data["lhs"], str)


def test_interval_precision_restored():
    before = mpmath.iv.dps
    check_minkowski(Fraction(3, 2), 3, P(2, 1))
    assert mpmath.iv.dps == before
