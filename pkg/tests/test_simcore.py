import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import charts, naive_euclidean, naive_minkowski, rel_close, vectors

from barsim.chart_model import ChartPair, StackedBarChart
from barsim.errors import (
    DimensionMismatch,
    EmptyCollection,
    InvalidOrder,
    LabelMismatch,
    LengthMismatch,
    NegativeDistance,
    NonFiniteDistance,
    NonPositiveScale,
    ScaleMismatch,
)
from barsim.simcore import (
    EUCLIDEAN,
    MANHATTAN,
    ChartVector,
    MetricSpec,
    ScaleSpec,
    auto_scale,
    compare_pair,
    euclidean_distance,
    manhattan_distance,
    minkowski_distance,
    rescale,
    similarity,
)


def chart(name, *vals):
    return StackedBarChart.from_items(name, [(f"s{i}", v) for i, v in enumerate(vals)])


FIG_A = ChartPair(chart("Democrats", 500, 1000, 300), chart("Republicans", 567, 900, 310))
FIG_B = ChartPair(chart("X", 500, 1000, 300), chart("Y", 1000, 500, 2000))

X = ChartVector((0.5, 1.0, 0.3), 1000.0)
Y_A = ChartVector((0.567, 0.9, 0.31), 1000.0)
Y_B = ChartVector((1.0, 0.5, 2.0), 1000.0)

# frozen from hand arithmetic:
#   sqrt(0.067^2 + 0.1^2 + 0.01^2) = sqrt(0.014589)
#   sqrt(0.5^2 + 0.5^2 + 1.7^2) = sqrt(3.39)
D_A_EUCLID = 0.120785
D_B_EUCLID = 1.841195
S_A = 0.886224
S_B = 0.158628


def test_frozen_values_agree_with_oracle():
    assert naive_euclidean(X.components, Y_A.components) == pytest.approx(math.sqrt(0.014589), rel=1e-12)
    assert math.sqrt(0.014589) == pytest.approx(D_A_EUCLID, abs=1e-6)
    assert math.sqrt(3.39) == pytest.approx(D_B_EUCLID, abs=1e-6)
    assert math.exp(-math.sqrt(3.39)) == pytest.approx(S_B, abs=1e-6)
    assert math.exp(-math.sqrt(0.014589)) == pytest.approx(S_A, abs=1e-6)


class TestMetricSpec:
    @pytest.mark.parametrize("r", [0.999, 0, -1, math.inf, math.nan])
    def test_invalid(self, r):
        with pytest.raises(InvalidOrder):
            MetricSpec(r)

    def test_named(self):
        assert MANHATTAN.r == 1.0
        assert EUCLIDEAN.r == 2.0
        assert MetricSpec().r == 2.0


class TestAutoScale:
    def test_figure_1a(self):
        assert auto_scale([FIG_A.left, FIG_A.right]) == 1000

    def test_figure_1b(self):
        # max segment 2000 -> 10**3
        assert auto_scale([FIG_B.left, FIG_B.right]) == 1000

    def test_all_zero(self):
        assert auto_scale([chart("a", 0, 0), chart("b", 0, 0)]) == 1

    def test_empty(self):
        with pytest.raises(EmptyCollection):
            auto_scale([])

    @pytest.mark.parametrize(
        "top, expected",
        [(1, 1), (9.99, 1), (10, 10), (0.5, 0.1), (999.999, 100), (1e-300, 1e-300), (1e300, 1e300),
         (5e-324, 1e-307), (1.7e308, 1e308)],
    )
    def test_power_of_ten(self, top, expected):
        assert auto_scale([chart("a", top)]) == pytest.approx(expected, rel=1e-12)

    @given(charts())
    def test_largest_scaled_component_in_one_to_ten(self, c):
        top = max(c.values)
        assume(top > 0)
        assume(top >= 1e-307)
        scaled = top / auto_scale([c])
        assert 1 <= scaled < 10 or math.isclose(scaled, 1) or math.isclose(scaled, 10)


    @given(charts())
    def test_always_positive_finite(self, c):
        assert 0 < auto_scale([c]) < math.inf


class TestRescale:
    def test_figure_1a_left(self):
        assert rescale((500, 1000, 300), 1000).components == (0.5, 1.0, 0.3)

    def test_identity(self):
        v = rescale((500, 1000, 300), 1)
        assert v.components == (500, 1000, 300)
        assert v.c == 1 and v.n == 3

    def test_figure_1b_right(self):
        assert rescale((1000, 500, 2000), 1000).components == (1.0, 0.5, 2.0)

    @pytest.mark.parametrize("c", [0, -1, math.inf, math.nan])
    def test_bad_scale(self, c):
        with pytest.raises(NonPositiveScale):
            rescale((1, 2), c)

    def test_empty(self):
        with pytest.raises(EmptyCollection):
            rescale((), 1)


class TestDistances:
    def test_figure_1a_euclidean(self):
        assert minkowski_distance(X, Y_A, 2) == pytest.approx(D_A_EUCLID, abs=1e-6)
        assert euclidean_distance(X, Y_A) == pytest.approx(D_A_EUCLID, abs=1e-6)

    def test_figure_1b_manhattan(self):
        # 0.5 + 0.5 + 1.7
        assert minkowski_distance(X, Y_B, 1) == pytest.approx(2.7, rel=1e-12)

    def test_figure_1b_euclidean(self):
        assert euclidean_distance(X, Y_B) == pytest.approx(D_B_EUCLID, abs=1e-6)

    def test_figure_1a_manhattan(self):
        # 0.067 + 0.1 + 0.01
        assert manhattan_distance(X, Y_A) == pytest.approx(0.177, rel=1e-12)

    @pytest.mark.parametrize("r", [1, 1.5, 2, 3, 50, 1e6])
    def test_identical_is_zero(self, r):
        assert minkowski_distance(X, X, r) == 0

    def test_identical_specialized(self):
        assert euclidean_distance(X, X) == 0
        assert manhattan_distance(X, X) == 0

    def test_large_order_approaches_max(self):
        assert minkowski_distance(X, Y_B, 1e6) == pytest.approx(1.7, rel=1e-5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            minkowski_distance(X, ChartVector((1.0,), 1000.0))

    def test_scale_mismatch(self):
        with pytest.raises(ScaleMismatch):
            euclidean_distance(X, ChartVector((1.0, 2.0, 3.0), 1.0))

    def test_invalid_order(self):
        with pytest.raises(InvalidOrder):
            minkowski_distance(X, Y_A, 0.5)

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(vectors(n), vectors(n))),
           st.sampled_from([1, 1.5, 2, 3]))
    def test_matches_textbook_formula(self, xy, r):
        x, y = xy
        expected = naive_minkowski(x.components, y.components, r)
        assert rel_close(minkowski_distance(x, y, r), expected, 1e-9)

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
    def test_specializations(self, xy):
        x, y = xy
        assert rel_close(minkowski_distance(x, y, 1), manhattan_distance(x, y), 1e-12)
        assert rel_close(minkowski_distance(x, y, 2), euclidean_distance(x, y), 1e-12)

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(vectors(n), vectors(n), vectors(n))),
           st.sampled_from([1, 1.5, 2, 3]))
    def test_metric_axioms(self, xyz, r):
        x, y, z = xyz
        dxy = minkowski_distance(x, y, r)
        assert dxy >= 0
        assert minkowski_distance(x, x, r) == 0
        assert rel_close(dxy, minkowski_distance(y, x, r), 1e-12)
        dxz = minkowski_distance(x, z, r)
        dyz = minkowski_distance(y, z, r)
        assert dxz <= (dxy + dyz) * (1 + 1e-9)

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(vectors(n), vectors(n))),
           st.floats(1e-3, 1e3), st.sampled_from([1, 1.5, 2, 3]))
    def test_homogeneity(self, xy, a, r):
        x, y = xy
        d = minkowski_distance(x, y, r)
        # keep clear of cancellation when the vectors nearly coincide
        assume(d > 1e-3 * max(max(x.components), max(y.components), 1e-300))
        ax = ChartVector(tuple(a * v for v in x.components), 1.0)
        ay = ChartVector(tuple(a * v for v in y.components), 1.0)
        assert rel_close(minkowski_distance(ax, ay, r), a * d, 1e-12)


class TestSimilarity:
    def test_zero(self):
        assert similarity(0) == 1

    def test_figure_values(self):
        assert similarity(D_B_EUCLID) == pytest.approx(S_B, abs=1e-6)
        assert similarity(D_A_EUCLID) == pytest.approx(S_A, abs=1e-6)

    def test_negative(self):
        with pytest.raises(NegativeDistance):
            similarity(-0.1)

    @pytest.mark.parametrize("d", [math.inf, math.nan])
    def test_non_finite(self, d):
        with pytest.raises(NonFiniteDistance):
            similarity(d)

    @given(st.floats(0, 700), st.floats(0, 700))
    def test_monotone(self, d1, d2):
        assume(d1 < d2)
        assert similarity(d1) >= similarity(d2)
        # strict once the gap exceeds double-precision resolution of exp
        if d2 - d1 > 1e-15:
            assert similarity(d1) > similarity(d2)

    @given(st.floats(0, 700))
    def test_range(self, d):
        assert 0 < similarity(d) <= 1


class TestComparePair:
    def test_figure_1b(self):
        res = compare_pair(FIG_B, EUCLIDEAN, ScaleSpec.explicit(1000))
        assert res.s == pytest.approx(S_B, abs=1e-6)
        assert round(res.s, 2) == 0.16
        assert (res.r, res.c) == (2, 1000)
        assert res.d == pytest.approx(D_B_EUCLID, abs=1e-6)

    def test_figure_1a(self):
        res = compare_pair(FIG_A, EUCLIDEAN, ScaleSpec.explicit(1000))
        assert res.s == pytest.approx(S_A, abs=1e-6)

    def test_auto_scale_default(self):
        assert compare_pair(FIG_A).c == 1000
        assert compare_pair(FIG_B).c == 1000

    def test_manhattan_figure_1a(self):
        res = compare_pair(FIG_A, MANHATTAN, ScaleSpec.explicit(1000))
        assert res.s == pytest.approx(math.exp(-0.177), rel=1e-12)

    @given(charts())
    def test_self_comparison(self, c):
        res = compare_pair(ChartPair(c, c))
        assert res.s == 1 and res.d == 0

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(charts(n=n), charts(n=n))))
    def test_symmetry_and_range(self, lr):
        left, right = lr
        right = StackedBarChart(right.name, tuple(
            type(s)(l, s.value) for l, s in zip(left.labels, right.segments)))
        a = compare_pair(ChartPair(left, right))
        b = compare_pair(ChartPair(right, left))
        assert rel_close(a.d, b.d, 1e-12) and rel_close(a.s, b.s, 1e-12)
        assert 0 < a.s <= 1
        assert a.s == pytest.approx(math.exp(-a.d), rel=1e-15)

    def test_unaligned_pair_rejected(self):
        with pytest.raises(LengthMismatch):
            compare_pair(ChartPair(chart("a", 1, 2), chart("b", 1)))
        with pytest.raises(LabelMismatch):
            compare_pair(ChartPair(chart("a", 1), StackedBarChart.from_items("b", [("q", 1)])))

    def test_scale_spec_validation(self):
        with pytest.raises(NonPositiveScale):
            ScaleSpec.explicit(0)
        with pytest.raises(ValueError):
            ScaleSpec("sometimes")
