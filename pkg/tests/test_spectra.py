import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewspectra.spectra import (
    SortedSpectrum,
    Spectrum,
    negative_part_sum,
    partial_sums,
    sort_descending,
    tail_sums_s123,
)

GOLD = (1 + np.sqrt(5)) / 2
GOLD_NEG = (1 - np.sqrt(5)) / 2


def spec(values, dims):
    return Spectrum(np.asarray(values, dtype=float), dims)


class TestSpectrumType:
    def test_length_must_match_dims(self):
        with pytest.raises(ValueError):
            spec([1, 2, 3], (2, 2))

    def test_dims_positive(self):
        with pytest.raises(ValueError):
            spec([], (0, 1))

    def test_sorted_spectrum_rejects_unsorted(self):
        with pytest.raises(ValueError):
            SortedSpectrum(np.array([1.0, 2.0, 0.0, 0.0]), (2, 2))

    def test_swapped(self):
        s = spec([1, 2, 3, 4, 5, 6], (2, 3))
        assert s.swapped().dims == (3, 2)
        assert np.array_equal(s.swapped().values, s.values)


class TestSortDescending:
    def test_basic(self):
        out = sort_descending(spec([1, -2, 4, 2], (2, 2)))
        assert np.array_equal(out.values, [4, 2, 1, -2])

    def test_all_zero(self):
        out = sort_descending(spec([0, 0, 0, 0], (2, 2)))
        assert np.array_equal(out.values, [0, 0, 0, 0])

    def test_golden_multiset(self):
        s = spec([GOLD_NEG, 1, GOLD, 1, GOLD, GOLD_NEG], (2, 3))
        out = sort_descending(s)
        expect = [GOLD, GOLD, 1, 1, GOLD_NEG, GOLD_NEG]
        assert np.allclose(out.values, expect, atol=0)


class TestPartialSums:
    def test_basic(self):
        assert np.array_equal(partial_sums(spec([4, 2, 1, -2], (2, 2))), [5, 1, -1, -2])

    def test_ones(self):
        assert np.array_equal(partial_sums(spec([1, 1, 1, 1], (2, 2))), [4, 3, 2, 1])

    def test_nine_cell(self):
        # frozen from the suffix-sum oracle below
        s = spec([1, 1, 1, 1, 1, 1, -1, -1, -1], (3, 3))
        expect = [3, 2, 1, 0, -1, -2, -3, -2, -1]
        got = partial_sums(s)
        assert np.array_equal(got, expect)
        # independent oracle: plain python suffix sums of the sorted values
        vals = sorted(s.values, reverse=True)
        oracle = [sum(vals[k:]) for k in range(9)]
        assert oracle == expect


class TestTailSums:
    def test_basic(self):
        assert tail_sums_s123(spec([4, 2, 1, -2], (2, 2))) == (5, 1, -1)

    def test_ones(self):
        assert tail_sums_s123(spec([1, 1, 1, 1], (2, 2))) == (4, 3, 2)

    def test_golden_family_symbolic(self):
        # s1 = 3 + sqrt5 + 2c, s2 = (5 + sqrt5)/2 + 2c, s3 = 2 + 2c
        c = -0.8
        s = spec([GOLD, GOLD, 1, 1, c, c], (2, 3))
        s1, s2, s3 = tail_sums_s123(s)
        r5 = np.sqrt(5)
        assert s1 == pytest.approx(3 + r5 + 2 * c, abs=1e-12)
        assert s2 == pytest.approx((5 + r5) / 2 + 2 * c, abs=1e-12)
        assert s3 == pytest.approx(2 + 2 * c, abs=1e-12)

    def test_too_short(self):
        with pytest.raises(ValueError):
            tail_sums_s123(spec([1, 2], (1, 2)))


class TestNegativePartSum:
    def test_single_negative(self):
        assert negative_part_sum(spec([4, 2, 1, -2], (2, 2))) == -2

    def test_nonnegative(self):
        assert negative_part_sum(spec([1, 1, 1, 1], (2, 2))) == 0

    def test_pair(self):
        s = spec([GOLD, GOLD, 1, 1, -0.8, -0.8], (2, 3))
        assert negative_part_sum(s) == pytest.approx(-1.6, abs=1e-12)

    def test_exact_zero_counts_nonnegative(self):
        assert negative_part_sum(spec([0.0, -0.0, 1.0, 2.0], (2, 2))) == 0


finite_vals = st.lists(
    st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=4, max_size=4
)


@given(finite_vals, st.randoms())
@settings(max_examples=60, deadline=None)
def test_permutation_invariance(vals, rnd):
    shuffled = list(vals)
    rnd.shuffle(shuffled)
    a, b = spec(vals, (2, 2)), spec(shuffled, (2, 2))
    assert np.array_equal(sort_descending(a).values, sort_descending(b).values)
    assert np.array_equal(partial_sums(a), partial_sums(b))
    assert negative_part_sum(a) == negative_part_sum(b)


@given(finite_vals)
@settings(max_examples=60, deadline=None)
def test_telescoping(vals):
    s = spec(vals, (2, 2))
    p = partial_sums(s)
    v = sort_descending(s).values
    scale = max(1.0, np.abs(v).max())
    for k in range(3):
        assert abs((p[k] - p[k + 1]) - v[k]) <= 1e-12 * scale


@given(finite_vals)
@settings(max_examples=60, deadline=None)
def test_negative_part_is_min_tail(vals):
    s = spec(vals, (2, 2))
    p = partial_sums(s)
    scale = max(1.0, float(np.abs(s.values).max()))
    if np.any(s.values < 0):
        assert abs(negative_part_sum(s) - p.min()) <= 1e-12 * scale
    else:
        assert negative_part_sum(s) == 0
