import math
import random
from fractions import Fraction

import pytest

from ghc import _linalg as la
from ghc.forms import (
    DegenerateFlagError,
    FlagVector,
    FormError,
    GramForm,
    HumbertForm,
    NotPositiveDefiniteError,
    Place,
    archimedean_height,
    canonical_flag,
    content,
    det_L,
    evaluate,
    finite_height,
    flag_from_chain,
    height_by_minors,
    invariant,
    length_function,
)
from ghc.partitions import Partition
from ghc.schur import VectorTableau, highest_weight_vector

from _oracles import brute_minimum, partitions_up_to, random_unimodular

A3 = [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
D4 = [[2, 0, 1, 0], [0, 2, 1, 0], [1, 1, 2, 1], [0, 0, 1, 2]]


def P(*parts):
    return Partition(parts)


def e(i, n):
    return tuple(int(j == i - 1) for j in range(n))


class TestGramForm:
    def test_parse(self):
        g = GramForm.parse("# A2\n2\n2 1\n1 2\n")
        assert g.n == 2 and g.det() == 3

    def test_parse_rationals(self):
        g = GramForm.parse("2\n1/2 0\n0 3/4")
        assert g.matrix[0][0] == Fraction(1, 2)

    @pytest.mark.parametrize(
        "text",
        ["2\n1 2\n3 1", "2\n1 0", "x\n1", "2\n1 0\n0 a", "2\n1 0 0\n0 1"],
    )
    def test_parse_errors(self, text):
        with pytest.raises(FormError):
            GramForm.parse(text)

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefiniteError):
            GramForm([[1, 2], [2, 1]])

    def test_roundtrip_text(self):
        g = GramForm([[Fraction(3, 2), 1], [1, 2]])
        assert GramForm.parse(g.to_text()) == g

    def test_from_file(self, tmp_path):
        p = tmp_path / "a3.gram"
        p.write_text("3\n2 1 1\n1 2 1\n1 1 2\n")
        assert GramForm.from_file(p).det() == 4


class TestEvaluate:
    def test_identity(self):
        x = FlagVector(P(2, 1), [e(1, 3), e(2, 3)])
        assert evaluate(GramForm(la.identity(3)), x) == 1

    def test_a3_example(self):
        x = FlagVector(P(2, 1), [(1, 0, 0), (0, 1, -1)])
        assert evaluate(GramForm(A3), x) == 8

    def test_a3_brute_minimum(self):
        # exhaustive search over columns in [-2, 2]^3
        assert brute_minimum(A3, P(2, 1), r=2) == 6

    def test_diagonal_pattern(self):
        d = [2, 3, 5]
        a = GramForm([[d[i] ** 2 if i == j else 0 for j in range(3)] for i in range(3)])
        for lam in [P(1), P(2, 1), P(3, 1, 1), P(2, 2)]:
            want = math.prod(d[i] ** (2 * p) for i, p in enumerate(lam.parts))
            assert evaluate(a, canonical_flag(lam, 3)) == want

    def test_degenerate(self):
        with pytest.raises(DegenerateFlagError):
            FlagVector(P(1, 1), [(1, 2), (2, 4)])

    def test_size_mismatch(self):
        with pytest.raises(FormError):
            evaluate(GramForm(A3), FlagVector(P(1), [(1, 0)]))

    def test_homogeneity(self):
        rng = random.Random(1)
        for lam in [P(1), P(2, 1), P(1, 1), P(3, 1)]:
            x = FlagVector(lam, [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(lam.height)])
            for c in [Fraction(2), Fraction(3, 7)]:
                assert evaluate(GramForm(A3).scaled(c), x) == c**lam.weight * evaluate(GramForm(A3), x)

    def test_unimodular_invariance(self):
        rng = random.Random(2)
        a = GramForm(A3)
        for _ in range(10):
            u = random_unimodular(rng, 3)
            uinv = [[int(v) for v in row] for row in la.inverse(u)]
            x = FlagVector(P(2, 1), [(1, 0, 1), (0, 1, 2)])
            y = FlagVector(P(2, 1), [tuple(la.matvec(uinv, c)) for c in x.columns]).canonical()
            assert evaluate(a.transform(u), y) == evaluate(a, x)

    def test_positive(self):
        rng = random.Random(3)
        for _ in range(20):
            cols = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(2)]
            if la.rank([list(c) for c in cols]) < 2:
                continue
            assert evaluate(GramForm(A3), FlagVector(P(2, 1), cols)) > 0

    def test_humbert_product_of_places(self):
        a = GramForm(A3)
        h = HumbertForm((Place(a, 1, "real"), Place(GramForm(la.identity(3)), 2, "complex")))
        x = FlagVector(P(2, 1), [(1, 0, 0), (0, 1, -1)])
        assert evaluate(h, x) == 8 * (1 * 2) ** 2
        assert det_L(h) == 4


class TestFlags:
    def test_canonical_is_idempotent(self):
        rng = random.Random(4)
        for _ in range(20):
            cols = [tuple(rng.randint(-4, 4) for _ in range(4)) for _ in range(3)]
            if la.rank([list(c) for c in cols]) < 3:
                continue
            x = FlagVector(Partition.from_columns([3, 1]), cols).canonical()
            assert x.is_canonical()
            assert next(v for v in x.columns[-1] if v) > 0

    def test_canonical_depends_on_chain(self):
        # unipotent change of x2 by x1 does not move the flag
        a = FlagVector(P(2, 1), [(1, 1, 0), (0, 1, 1)])
        b = FlagVector(P(2, 1), [(1, 1, 0), (1, 2, 1)])
        c = FlagVector(P(2, 1), [(-1, -1, 0), (0, -1, -1)])
        assert a.canonical() == b.canonical() == c.canonical()

    def test_canonical_is_primitive(self):
        x = FlagVector(P(2, 1), [(2, 0, 0), (0, 4, 2)]).canonical()
        assert content(x).is_unit()

    def test_not_nested(self):
        with pytest.raises(DegenerateFlagError):
            flag_from_chain(P(2, 1), [[(1, 0, 0)], [(0, 1, 0), (0, 0, 1)]])

    def test_rational_entries_rejected(self):
        with pytest.raises(FormError):
            FlagVector(P(1), [(Fraction(1, 2), 1)])


class TestContent:
    def test_examples(self):
        assert content(FlagVector(P(1), [(2, 4, 6)])).generator == 2
        assert content(FlagVector(P(1, 1), [(1, 0), (1, 1)])).generator == 1
        assert content(FlagVector(P(2, 1), [(2, 0), (0, 2)])).generator == 8

    def test_scaling(self):
        lam = P(2, 1)
        cols = [[1, 2, 0], [0, 1, 3]]
        base = content(VectorTableau.from_flag(lam, cols)).generator
        for alpha in [Fraction(3), Fraction(-2, 5)]:
            scaled = [[alpha * v for v in c] for c in cols]
            # columns of a (2,1) tableau: the first column has 2 cells, then 1; degree 3 in alpha
            assert content(VectorTableau.from_flag(lam, scaled)).generator == abs(alpha) ** 3 * base

    def test_zero(self):
        with pytest.raises(DegenerateFlagError):
            content(VectorTableau(P(1, 1), [[[1, 0], [2, 0]]]))


class TestDetAndInvariant:
    def test_det(self):
        assert det_L(GramForm(la.identity(3))) == 1
        assert det_L(GramForm(A3)) == 4
        assert det_L(GramForm(D4)) == 4

    def test_known_optima(self):
        # 3/2 for A3 with (2,1) and 2 for D4 with columns (3,1)
        assert invariant(GramForm(A3), P(2, 1), 6).exact() == Fraction(3, 2)
        assert invariant(GramForm(D4), Partition.from_columns([3, 1]), 8).exact() == 2

    def test_irrational(self):
        g = invariant(GramForm(A3), P(1), 2)
        assert g.exact() is None
        assert g.value.raised(3) == 2
        assert g.describe() == "gamma^3 = 2"
        assert abs(float(g) - 2 ** (1 / 3)) < 1e-12

    def test_comparison(self):
        g1 = invariant(GramForm(A3), P(1), 2)  # 2^(1/3)
        g2 = invariant(GramForm(A3), P(2, 1), 6)  # 3/2
        assert g1 < g2 and g1 <= g1 and g1 == g1
        assert not g2 < g1

    def test_identity(self):
        assert invariant(GramForm(la.identity(4)), P(1), 1).exact() == 1


class TestLength:
    def test_values(self):
        assert length_function(GramForm(la.identity(3)), canonical_flag(P(2, 1), 3)) == 0
        x = FlagVector(P(2, 1), [(1, 0, 0), (0, 1, -1)])
        # flag (e1, e1 - e2) inside an A2 plane gives 2 * 3
        m = FlagVector(P(2, 1), [(1, 0, 0), (0, 1, 0)])
        assert length_function(GramForm(A3), m) == pytest.approx(math.log(6))
        assert length_function(GramForm(A3), x) == pytest.approx(math.log(8))

    def test_det_normalised(self):
        m = FlagVector(P(2, 1), [(1, 0, 0), (0, 1, 0)])
        # scaling by 4^(-1/3) subtracts 3 * log(4^(1/3)) = log 4
        val = length_function(GramForm(A3), m) - P(2, 1).weight * math.log(4) / 3
        assert val == pytest.approx(math.log(Fraction(3, 2)))


class TestHeights:
    def test_identity(self):
        for lam in [P(1), P(2, 1), P(2, 2)]:
            assert archimedean_height(la.identity(3), highest_weight_vector(lam, 3)) == 1
            assert height_by_minors(la.identity(3), lam) == 1

    def test_diag(self):
        g = [[2, 0], [0, 3]]
        assert height_by_minors(g, P(2, 1)) == 144
        assert archimedean_height(g, highest_weight_vector(P(2, 1), 2)) == 144

    def test_routes_agree(self):
        rng = random.Random(5)
        for lam in partitions_up_to(4, 3):
            u = highest_weight_vector(lam, 3)
            done = 0
            while done < 4:
                g = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
                if la.det(g) == 0:
                    continue
                assert archimedean_height(g, u) == height_by_minors(g, lam)
                done += 1

    def test_flag_routes_agree(self):
        rng = random.Random(6)
        g = [[1, 2, 0], [0, 1, 1], [1, 0, 2]]
        for _ in range(5):
            cols = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(2)]
            if la.rank([list(c) for c in cols]) < 2:
                continue
            x = FlagVector(P(2, 1), cols)
            assert archimedean_height(g, x) == height_by_minors(g, P(2, 1), x)

    def test_singular(self):
        with pytest.raises(ValueError):
            height_by_minors([[1, 1], [1, 1]], P(1))

    def test_finite(self):
        x = FlagVector(P(1), [(2, 4, 6)])
        assert finite_height(x, 2) == Fraction(1, 2)
        assert finite_height(x, 3) == 1
