import mpmath as mp
import pytest

from xi_lab.numerics import PoleError, PrecisionContext
from xi_lab.special import gamma, plan_zeta, zeta

CTX = PrecisionContext(128)
GRID = [mp.mpc(0.5, 14.13), mp.mpc(2, 0), mp.mpc(-1.3, 40), mp.mpc(0.75, 300), mp.mpc(3, -7), mp.mpc(-4.5, 0.5)]


@pytest.mark.parametrize("s", GRID)
def test_zeta_against_mpmath(s):
    v = zeta(s, CTX)
    with mp.workprec(300):
        ref = mp.zeta(s)
        assert abs(v.value - ref) <= v.err_bound
    assert v.err_bound <= abs(ref) * mp.ldexp(1, -110)


@pytest.mark.parametrize("s", GRID + [mp.mpc(-7.5, 2)])
def test_gamma_against_mpmath(s):
    v = gamma(s, CTX)
    with mp.workprec(300):
        assert abs(v.value - mp.gamma(s)) <= v.err_bound


def test_poles():
    with pytest.raises(PoleError, match="s=1"):
        zeta(1)
    for n in (0, -1, -4):
        with pytest.raises(PoleError):
            gamma(n)


def test_zeta_special_values():
    with mp.workprec(200):
        assert abs(zeta(2, CTX).value - mp.pi ** 2 / 6) < mp.ldexp(1, -120)
        assert abs(zeta(-1, CTX).value + mp.mpf(1) / 12) < mp.ldexp(1, -120)
        assert abs(zeta(-2, CTX).value) < mp.ldexp(1, -120)


@pytest.mark.parametrize("s", [mp.mpc(0.3, 5), mp.mpc(1.7, -20), mp.mpc(-0.5, 60)])
def test_functional_equation_cross_check(s):
    ctx = CTX
    with ctx.workprec():
        lhs = zeta(s, ctx)
        right_z = zeta(1 - s, ctx)
        g1, g2 = gamma((1 - s) / 2, ctx), gamma(s / 2, ctx)
        rhs = mp.pi ** (s - mp.mpf(0.5)) * g1.value / g2.value * right_z.value
        assert abs(lhs.value - rhs) <= lhs.err_bound + abs(rhs) * mp.ldexp(1, -100)


def test_cutoff_grows_with_height():
    n = [plan_zeta(mp.mpc(0.5, t), 160).cutoff_n for t in (10, 100, 400)]
    assert n == sorted(n) and n[-1] > n[0]
