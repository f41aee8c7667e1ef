import math

import pytest
from hypothesis import given, settings, strategies as st

from xi_lab.sinh_analogy import (
    Box, CurveDescriptor, crossing_count_formula, curves_in_box, eval_err_bound, hyperbola_families_disjoint,
    polylines_csv, residual_on_curve, sample_curve, true_zeros_in_box, vertical_crossings, vertical_sign_changes,
)


def labels(box):
    return [c.label() for c in curves_in_box(box)]


def test_box_examples():
    assert "line_diag" in labels(Box.square(0.1, 3)) and "im_hyperbola(1)" in labels(Box.square(0.1, 3))
    small = labels(Box.square(0.1, 1))
    assert "im_hyperbola(1)" not in small and "re_hyperbola(0)" in small
    assert labels(Box.square(0.1, 0.5)) == ["line_diag"]


def test_point_examples():
    assert residual_on_curve(CurveDescriptor("re_hyperbola", 0), (1, math.pi / 4)) <= eval_err_bound((1, math.pi / 4))
    assert residual_on_curve(CurveDescriptor("line_diag"), (2, 2)) == 0
    assert residual_on_curve(CurveDescriptor("im_hyperbola", 1), (2, math.pi / 4)) <= eval_err_bound((2, math.pi / 4))


def test_true_zeros():
    zs = true_zeros_in_box(Box.square(0.1, 2))
    assert zs[0] == pytest.approx((math.sqrt(math.pi / 2),) * 2)
    assert zs[1] == pytest.approx((math.sqrt(math.pi),) * 2)
    for x, y in zs:
        assert abs(__import__("cmath").sinh(complex(x, y) ** 2)) <= eval_err_bound((x, y))


def test_descriptor_validation():
    with pytest.raises(ValueError):
        CurveDescriptor("im_hyperbola", 0)
    with pytest.raises(ValueError):
        Box(0, 1, 0.1, 1)


def test_families_never_meet():
    assert hyperbola_families_disjoint(Box.square(0.1, 6))


@pytest.mark.parametrize("x0", [0.5, 1, 2, 3.7])
def test_vertical_crossings(x0):
    n = crossing_count_formula(x0, 50)
    assert vertical_crossings(x0, 50) == n == vertical_sign_changes(x0, 50)


boxes = st.tuples(st.floats(0.05, 2), st.floats(0.1, 2), st.floats(0.05, 2), st.floats(0.1, 2)).map(
    lambda v: Box(v[0], v[0] + v[1], v[2], v[2] + v[3]))


@settings(max_examples=40, deadline=None)
@given(boxes)
def test_residuals_within_bound(box):
    for c in curves_in_box(box):
        pts = sample_curve(c, box, 50)
        assert pts
        for p in pts:
            assert residual_on_curve(c, p) <= eval_err_bound(p)


@settings(max_examples=40, deadline=None)
@given(boxes)
def test_listing_is_complete(box):
    listed = {c.quarter_pi_multiple for c in curves_in_box(box)} - {None}
    for k in range(1, 40):
        meets = box.x_lo * box.y_lo <= k * math.pi / 4 <= box.x_hi * box.y_hi
        assert (k in listed) == meets


def test_csv_header_and_rows():
    text = polylines_csv(Box.square(0.1, 1), points=5)
    lines = text.splitlines()
    assert lines[0] == "kind,n,part,x,y"
    assert len(lines) == 1 + 2 * 5
