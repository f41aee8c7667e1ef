import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from xi_lab.completed import LinePoint, F_integral, F_line, F_product, im_equation_sides, integral_plan
from xi_lab.numerics import PoleError, PrecisionContext
from conftest import mpf

CTX = PrecisionContext(128)


@pytest.mark.parametrize("key", ["0,0", "0.25,3", "-1.2,14.3", "0.75,30", "1.5,100", "0,250"])
def test_line_values_against_oracle(oracle, key):
    a, t = key.split(",")
    v = F_line(LinePoint(mpf(a), mpf(t)), CTX)
    re, im = (mpf(x) for x in oracle["F_line"][key])
    with mp.workprec(200):
        # the oracle carries 40 significant digits
        tol = v.err_bound + abs(mp.mpc(re, im)) * mp.mpf(10) ** -38
        assert abs(v.value - mp.mpc(re, im)) <= tol


def test_poles_are_named():
    with pytest.raises(PoleError, match="pole at s=1"):
        F_line(LinePoint(0.5, 0))
    with pytest.raises(PoleError, match="pole at s=0"):
        F_line(LinePoint(-0.5, 0))


def test_trivial_zero_neighbourhood_uses_reflection():
    v = F_product(mp.mpc(-2, 0.01), CTX)
    w = F_product(mp.mpc(3, -0.01), CTX)
    with CTX.workprec():
        assert abs(v.value - w.value) <= v.err_bound + w.err_bound


alphas = st.floats(min_value=-2, max_value=2).filter(lambda a: abs(abs(a) - 0.5) > 1e-3)
ts = st.floats(min_value=0.1, max_value=60)


@settings(max_examples=20, deadline=None)
@given(alphas, ts)
def test_symmetries(a, t):
    f = F_line(LinePoint(a, t), CTX)
    g = F_line(LinePoint(a, -t), CTX)
    h = F_line(LinePoint(-a, -t), CTX)
    with CTX.workprec():
        assert abs(f.value - mp.conj(g.value)) <= f.err_bound + g.err_bound
        assert abs(f.value - h.value) <= f.err_bound + h.err_bound


@pytest.mark.parametrize("t", [0.3, 7, 21.5, 48])
def test_critical_line_is_real(t):
    v = F_line(LinePoint(0, t), CTX)
    assert abs(v.im) <= v.err_bound


@pytest.mark.parametrize("a,t", [(-0.4, 5), (0.3, 14.3), (1.2, 0.5)])
def test_two_routes_agree(a, t):
    s = mp.mpc(0.5 + a, t)
    p, q = F_product(s, CTX), F_integral(s, integral_plan(a, CTX), CTX)
    with CTX.workprec():
        assert abs(p.value - q.value) <= p.err_bound + q.err_bound


@pytest.mark.parametrize("a,t", [(0.25, 3), (-0.6, 8), (1.1, 15), (0, 2)])
def test_im_equation_difference_is_im_F(a, t):
    p = LinePoint(a, t)
    eq = im_equation_sides(p, None, CTX)
    f = F_line(p, CTX)
    with CTX.workprec():
        assert abs((eq.lhs - eq.rhs) - f.im) <= eq.err_bound + f.err_bound
