import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from xi_lab.numerics import (
    ComplexValue, DomainError, PoleError, PrecisionContext, elementary, fmt, parse,
)

small = st.floats(min_value=-3, max_value=3, allow_nan=False)
OPS = ("exp", "log", "sqrt", "sin", "cos", "sinh", "cosh")


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(32)
    with pytest.raises(ValueError):
        PrecisionContext(128, guard_bits=4)
    ctx = PrecisionContext(100)
    assert ctx.bits == 132
    assert ctx.ulp == mp.ldexp(1, -100)
    assert ctx.doubled().working_bits == 200


def test_pole_error_names_the_pole():
    assert str(PoleError("s=1")) == "pole at s=1"


def test_log_of_zero_is_a_domain_error():
    with pytest.raises(DomainError):
        elementary("log", 0)
    with pytest.raises(DomainError):
        elementary("pow", 0, exponent=-1)
    assert elementary("pow", 0, exponent=2).value == 0


def test_pow_matches_exp_log():
    ctx = PrecisionContext(128)
    v = elementary("pow", mp.mpc(2, 1), ctx, exponent=mp.mpc(0.5, -3))
    with mp.workprec(200):
        ref = mp.mpc(2, 1) ** mp.mpc(0.5, -3)
        assert abs(v.value - ref) <= v.err_bound


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(OPS), small, small)
def test_precision_doubling_stays_within_bound(op, x, y):
    if op in ("log", "sqrt") and x == 0 and y == 0:
        return
    z = mp.mpc(x, y)
    lo = elementary(op, z, PrecisionContext(96))
    hi = elementary(op, z, PrecisionContext(192))
    with mp.workprec(256):
        assert abs(lo.value - hi.value) <= lo.err_bound


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(("exp", "sin", "cos", "sinh", "cosh")), small, small)
def test_conjugation_symmetry(op, x, y):
    z = mp.mpc(x, y)
    a = elementary(op, z)
    b = elementary(op, mp.conj(z))
    with mp.workprec(200):
        assert abs(a.value - mp.conj(b.value)) <= a.err_bound + b.err_bound


@settings(max_examples=50, deadline=None)
@given(small, small, st.floats(min_value=0, max_value=1e-10), small, small)
def test_arithmetic_error_bounds_cover_perturbations(a, b, err, c, d):
    x = ComplexValue.of(mp.mpc(a, b), err)
    y = ComplexValue.of(mp.mpc(c, d), err)
    with mp.workprec(160):
        for res, op in ((x + y, lambda p, q: p + q), (x * y, lambda p, q: p * q)):
            # moving both inputs to the edge of their discs stays inside the output disc
            shifted = op(x.value + err, y.value - err)
            assert abs(shifted - res.value) <= res.err_bound * (1 + 1e-30)


def test_division_by_uncertain_zero():
    with pytest.raises(DomainError):
        ComplexValue.of(1) / ComplexValue.of(0, 1e-3)


@settings(max_examples=100, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_fmt_parse_round_trip(x):
    with mp.workprec(128):
        v = mp.mpf(x) * mp.pi
    s = fmt(v)
    assert fmt(parse(s)) == s


def test_fmt_keeps_thirty_digits_outside_workprec():
    with mp.workprec(200):
        v = mp.pi
    assert fmt(v) == "3.14159265358979323846264338328"
    assert fmt(0) == "0"
