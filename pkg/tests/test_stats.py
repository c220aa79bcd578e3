import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy import stats as sps

from senate_power.stats import (
    LEVELS,
    LengthMismatch,
    Method,
    OutOfRange,
    Series,
    SeriesTooShort,
    classify_correlation,
    correlate,
    exact_p_value,
    kendall,
    kendall_tau,
    rank_with_ties,
    spearman,
    spearman_rho,
)


def kendall_oracle(x, y) -> F:
    """Tie-free tau from explicit concordant/discordant pair counts."""
    c = d = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        prod = (x[i] - x[j]) * (y[i] - y[j])
        c += prod > 0
        d += prod < 0
    return F(c - d, c + d)


def spearman_oracle(x, y) -> float:
    """Pearson correlation of mid-ranks via numpy."""
    rx = sps.rankdata(x)
    ry = sps.rankdata(y)
    return float(np.corrcoef(rx, ry)[0, 1])


distinct = st.lists(st.integers(-1000, 1000), min_size=3, max_size=12, unique=True)
tied = st.lists(st.integers(0, 4), min_size=3, max_size=20)


def pair(strategy):
    return strategy.flatmap(
        lambda xs: st.tuples(
            st.just(xs),
            st.permutations(xs) if len(set(xs)) == len(xs) else st.lists(
                st.integers(0, 4), min_size=len(xs), max_size=len(xs)
            ),
        )
    )


class TestExamples:
    def test_rank_with_ties(self):
        assert rank_with_ties([10, 20, 20, 5]) == [2.0, 3.5, 3.5, 1.0]
        assert rank_with_ties([F(1, 3), F(1, 6), F(1, 6)]) == [3.0, 1.5, 1.5]

    def test_spearman_value(self):
        assert spearman_rho([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]) == pytest.approx(0.8, abs=1e-12)

    def test_kendall_value(self):
        assert kendall_tau([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(2 / 3, abs=1e-12)

    @pytest.mark.parametrize("fn", [spearman_rho, kendall_tau])
    def test_perfect(self, fn):
        x = [1, 2, 3, 4, 5, 6]
        assert fn(x, x) == 1.0
        assert fn(x, x[::-1]) == -1.0

    def test_series_inputs(self):
        a = Series("a", [1, 2, 3, 4])
        b = Series("b", (4, 3, 2, 1))
        assert kendall_tau(a, b) == -1.0 and len(a) == 4

    def test_fraction_inputs(self):
        x = [F(1, 3), F(1, 2), F(2, 3), F(1, 6)]
        assert kendall_tau(x, [3, 4, 5, 1]) == 1.0


class TestOracles:
    @settings(max_examples=300)
    @given(pair(distinct))
    def test_kendall_matches_pair_enumeration_exactly(self, xy):
        x, y = xy
        assert kendall_tau(x, y) == float(kendall_oracle(x, y))

    @settings(max_examples=300)
    @given(pair(tied))
    def test_spearman_matches_rank_pearson(self, xy):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        assert abs(spearman_rho(x, y) - spearman_oracle(x, y)) <= 1e-12

    @settings(max_examples=200)
    @given(pair(tied))
    def test_kendall_tau_b_and_p_match_scipy(self, xy):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        ref = sps.kendalltau(x, y, variant="b", method="asymptotic")
        res = kendall(x, y)
        assert res.coefficient == pytest.approx(ref.statistic, abs=1e-12)
        assert res.p_value == pytest.approx(ref.pvalue, abs=1e-9)

    @settings(max_examples=200)
    @given(pair(tied))
    def test_spearman_p_matches_scipy(self, xy):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        ref = sps.spearmanr(x, y)
        res = spearman(x, y)
        assert res.coefficient == pytest.approx(ref.statistic, abs=1e-12)
        assume(abs(res.coefficient) < 1 - 1e-9)
        assert res.p_value == pytest.approx(ref.pvalue, abs=1e-9)


class TestProperties:
    @given(pair(tied), st.sampled_from(list(Method)))
    def test_symmetric(self, xy, method):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        assert correlate(x, y, method).coefficient == pytest.approx(
            correlate(y, x, method).coefficient, abs=1e-12
        )

    @given(pair(tied), st.sampled_from(list(Method)))
    def test_negation_flips_sign(self, xy, method):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        a = correlate(x, y, method).coefficient
        b = correlate(x, [-v for v in y], method).coefficient
        assert a == pytest.approx(-b, abs=1e-12)

    @given(pair(tied), st.sampled_from(list(Method)))
    def test_monotone_transform_invariant(self, xy, method):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        a = correlate(x, y, method).coefficient
        b = correlate([v ** 3 + 7 for v in x], [math.exp(v) for v in y], method).coefficient
        assert a == pytest.approx(b, abs=1e-12)

    @given(pair(tied), st.sampled_from(list(Method)))
    def test_bounded(self, xy, method):
        x, y = xy
        assume(len(set(x)) > 1 and len(set(y)) > 1)
        res = correlate(x, y, method)
        assert -1 <= res.coefficient <= 1 and 0 <= res.p_value <= 1
        assert res.level in LEVELS and res.n == len(x)


class TestClassification:
    @pytest.mark.parametrize(
        "c, level",
        [
            (-1.0, "very high inverse"),
            (-0.8, "very high inverse"),
            (-0.79, "high inverse"),
            (-0.6, "high inverse"),
            (-0.5, "moderate inverse"),
            (-0.4, "moderate inverse"),
            (-0.39, "low and very low"),
            (0.0, "low and very low"),
            (0.39, "low and very low"),
            (0.4, "moderate"),
            (0.6, "high"),
            (0.79, "high"),
            (0.8, "very high"),
            (1.0, "very high"),
        ],
    )
    def test_brackets(self, c, level):
        assert classify_correlation(c) == level

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            classify_correlation(1.01)


class TestDegenerate:
    @pytest.mark.parametrize("method", list(Method))
    def test_zero_variance_flagged(self, method):
        res = correlate([0, 0, 0, 0], [1, 2, 3, 4], method)
        assert res.zero_variance and not res.defined
        assert math.isnan(res.coefficient)
        assert res.p_value == 1.0 and not res.significant and res.level == "undefined"

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            kendall([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            spearman([1, 2], [2, 1])

    def test_method_parse(self):
        assert Method.parse("Kendall") is Method.KENDALL
        with pytest.raises(ValueError):
            Method.parse("pearson")


class TestExactP:
    def test_perfect_order(self):
        # only the identity and the reversal reach |tau| = 1 among 5! orderings
        assert exact_p_value([1, 2, 3, 4, 5], [1, 2, 3, 4, 5], "kendall") == pytest.approx(2 / 120)

    def test_matches_scipy_exact(self):
        x = [1, 2, 3, 4, 5, 6, 7]
        y = [2, 1, 4, 3, 7, 5, 6]
        ref = sps.kendalltau(x, y, method="exact").pvalue
        assert exact_p_value(x, y, Method.KENDALL) == pytest.approx(ref, abs=1e-12)

    def test_exact_flag_in_result(self):
        res = kendall([1, 2, 3, 4, 5], [1, 2, 3, 5, 4], exact=True)
        assert res.p_value == exact_p_value([1, 2, 3, 4, 5], [1, 2, 3, 5, 4], "kendall")

    def test_cap(self):
        with pytest.raises(ValueError):
            exact_p_value(list(range(11)), list(range(11)), "spearman")
