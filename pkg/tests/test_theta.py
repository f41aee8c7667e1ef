import cmath

import mpmath as mp
import pytest

from xi_lab.numerics import DomainError, PrecisionContext
from xi_lab.theta import (
    B_MAX, ThetaArg, check_arc, functional_equation_residual, one_plus_two_w, theta_w, theta_w_deriv,
)
from conftest import mpf

CTX = PrecisionContext(128)


@pytest.mark.parametrize("x", ["0.3", "1", "2.7"])
def test_w_against_jtheta_oracle(oracle, x):
    v = theta_w(ThetaArg.real(mpf(x)), CTX)
    with mp.workprec(200):
        assert abs(v.value - mpf(oracle["w"][x])) <= v.err_bound + mp.mpf(10) ** -39


@pytest.mark.parametrize("x", [0.3, 1, 2.7, cmath.exp(0.5j), cmath.exp(1.3j), 0.05 + 2j])
def test_functional_equation(x):
    res, bound = functional_equation_residual(x, CTX)
    assert res <= bound


def test_large_argument_is_tiny_not_zero():
    v = theta_w(ThetaArg.real(100), CTX)
    assert 0 < v.re < mp.mpf(10) ** -130


def test_domain():
    with pytest.raises(DomainError):
        ThetaArg.real(-1)
    with pytest.raises(DomainError, match="b must be < pi/2 - margin"):
        check_arc(1.56)
    check_arc(B_MAX)


def test_arc_decay():
    vals = [abs(one_plus_two_w(ThetaArg.arc(b), CTX).value) for b in (1.2, 1.35, 1.5, 1.55)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("b,k", [(0.0, 1), (0.7, 2), (1.4, 3), (1.4, 6), (-1.0, 4)])
def test_derivatives_against_numerical_differentiation(b, k):
    v = theta_w_deriv(b, k, CTX)
    with mp.workprec(256):
        f = lambda u: mp.nsum(lambda n: mp.exp(-mp.pi * n * n * mp.expj(u)), [1, mp.inf])
        ref = mp.diff(f, mp.mpf(b), k)
        assert abs(v.value - ref) <= v.err_bound + abs(ref) * mp.mpf(10) ** -30


def test_zeroth_derivative_is_w():
    a = theta_w_deriv(0.9, 0, CTX)
    b = theta_w(ThetaArg.arc(0.9), CTX)
    with CTX.workprec():
        assert abs(a.value - b.value) <= a.err_bound + b.err_bound
