import pytest
from hypothesis import assume, given, settings, strategies as st

from lpzeros.catalog import (
    cross_product_series,
    hurwitz_bessel_series,
    polynomial_series,
    wright_series,
)
from lpzeros.numerics import Precision
from lpzeros.realroots import positive_real_count
from lpzeros.winding import (
    Rect,
    ZeroOnContour,
    box_counts,
    contour_winding,
    count_in_rect,
    nonpositive_count,
    nonreal_count,
    zero_count_in_rect,
)

P = Precision(30)
CUBE_ROOTS_OF_ONE = polynomial_series((-1, 0, 0, 1))
I_PAIR = polynomial_series((1, 0, 1))


class TestRect:
    def test_degenerate(self):
        with pytest.raises(ValueError):
            Rect(1, 1, 0, 1)

    def test_box_and_scale(self):
        assert Rect.box(2) == Rect(-2, 2, -2, 2)
        assert Rect.box(2).scaled(2) == Rect.box(4)
        assert Rect(0, 2, 0, 2).scaled(2) == Rect(-1, 3, -1, 3)
        assert Rect(0, 1, 0, 2).perimeter() == 6


class TestContourWinding:
    def test_cube_roots(self):
        res = contour_winding(CUBE_ROOTS_OF_ONE, Rect.box(2), P)
        assert res.count == 3 and res.residual < 0.05

    def test_only_plus_i(self):
        assert contour_winding(I_PAIR, Rect(-2, 2, 0.5, 2), P).count == 1

    def test_two_j0_zeros(self):
        res = contour_winding(hurwitz_bessel_series(0), Rect(-1, 10, -1, 1), P)
        assert res.count == 2 and res.residual < 0.05

    def test_zero_on_contour_detected(self):
        with pytest.raises(ZeroOnContour):
            contour_winding(polynomial_series((-1, 1)), Rect(1, 2, -1, 1), P)

    def test_retry_moves_contour(self):
        res = count_in_rect(polynomial_series((-1, 1)), Rect(1, 2, -1, 1), P)
        assert res.rect != Rect(1, 2, -1, 1)
        assert res.count == 1

    def test_zero_count_shortcut(self):
        assert zero_count_in_rect(CUBE_ROOTS_OF_ONE, Rect(0, 2, -1, 1), P) == 1


class TestDerivedCounts:
    def test_hurwitz_one_and_a_half(self):
        assert nonpositive_count(hurwitz_bessel_series(1.5), 30, P) == 1

    def test_hurwitz_two_and_a_half_is_conjugate_pair(self):
        spec = hurwitz_bessel_series(2.5)
        assert nonpositive_count(spec, 30, P) == 2
        upper = count_in_rect(spec, Rect(-30, 30, 0.05, 30), P).count
        lower = count_in_rect(spec, Rect(-30, 30, -30, -0.05), P).count
        assert upper == lower == 1

    def test_reflected_wright_has_no_nonpositive(self):
        assert nonpositive_count(wright_series(0.5, 1).reflect(), 30, P) == 0

    def test_reflected_wright_all_real(self):
        assert nonreal_count(wright_series(2, 1.5).reflect(), 30, P) == 0

    def test_cross_a_all_real(self):
        assert nonreal_count(cross_product_series(0.7, "A"), 30, P) == 0

    def test_i_pair_is_nonreal(self):
        assert nonreal_count(I_PAIR, 3, P) == 2

    def test_census_adds_up(self):
        c = box_counts(hurwitz_bessel_series(2.5), 30, P)
        assert c.real_nonpositive + c.nonreal + c.positive_real == c.total
        assert c.nonpositive == c.total - positive_real_count(hurwitz_bessel_series(2.5), c.R, prec=P)


SPECS = [hurwitz_bessel_series(2.5), hurwitz_bessel_series(3.7),
         cross_product_series(-1.3, "A"), polynomial_series((5, -2, 3, 1))]


@settings(max_examples=12, deadline=None, derandomize=True)
@given(st.sampled_from(range(len(SPECS))), st.floats(4, 20), st.floats(0.03, 0.4))
def test_conjugate_pairing(i, R, delta):
    spec = SPECS[i]
    upper = count_in_rect(spec, Rect(-R, R, delta, R), P).count
    lower = count_in_rect(spec, Rect(-R, R, -R, -delta), P).count
    assert upper == lower


@settings(max_examples=12, deadline=None, derandomize=True)
@given(st.sampled_from(range(len(SPECS))), st.floats(5, 20), st.floats(-0.8, 0.8))
def test_additivity(i, R, cut_fraction):
    # Split along a vertical line; count_in_rect nudges only on a contour hit.
    spec = SPECS[i]
    cut = cut_fraction * R
    whole = count_in_rect(spec, Rect.box(R), P)
    left = count_in_rect(spec, Rect(-R, cut, -R, R), P)
    right = count_in_rect(spec, Rect(cut, R, -R, R), P)
    assume(whole.rect == Rect.box(R))
    assume(left.rect == Rect(-R, cut, -R, R) and right.rect == Rect(cut, R, -R, R))
    assert left.count + right.count == whole.count


def test_additivity_on_axis_cut():
    # A zero pair sits on the imaginary axis, so cutting there needs the retry.
    spec = cross_product_series(-1.3, "A")
    whole = count_in_rect(spec, Rect.box(5), P)
    left = count_in_rect(spec, Rect(-5, 0, -5, 5), P)
    assert left.rect != Rect(-5, 0, -5, 5)
    right = count_in_rect(spec, Rect(left.rect.re_hi, 5, -5, 5), P)
    assert left.count + right.count == whole.count
