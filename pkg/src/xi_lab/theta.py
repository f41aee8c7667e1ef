"""The theta kernel w(x) = sum_{n>=1} exp(-pi n^2 x) and its arc derivatives."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .numerics import DEFAULT_CONTEXT, ComplexValue, DomainError, PrecisionContext, as_value

# Arc evaluations are supported for |b| <= pi/2 - ARC_MARGIN.
ARC_MARGIN = 0.02
B_MAX = math.pi / 2 - ARC_MARGIN


@dataclass(frozen=True)
class ThetaArg:
    """Argument of w; ``as_arc`` records b when x = e^{ib}."""

    x: ComplexValue
    as_arc: float | None = None

    def __post_init__(self) -> None:
        if self.x.re <= 0:
            raise DomainError(f"theta kernel needs Re x > 0, got {mp.nstr(self.x.re, 8)}")

    @classmethod
    def real(cls, x) -> "ThetaArg":
        return cls(as_value(x))

    @classmethod
    def arc(cls, b: float, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "ThetaArg":
        check_arc(b)
        with ctx.workprec():
            z = mp.expj(mp.mpf(b))
        return cls(ComplexValue(z.real, z.imag, 2 * ctx.ulp), as_arc=b)


def check_arc(b) -> None:
    if not abs(float(b)) <= B_MAX:
        raise DomainError(f"b must be < pi/2 - margin (|b| <= {B_MAX:.4f}), got {float(b)}")


def _terms_needed(re_x: float, log_target: float) -> int:
    """Smallest N with exp(-pi N^2 r) / (1 - exp(-pi (2N+1) r)) below exp(log_target)."""
    n = 1
    while True:
        lead = -math.pi * n * n * re_x
        denom = -math.expm1(-math.pi * (2 * n + 1) * re_x)
        if lead - math.log(denom) < log_target:
            return n
        n += 1


def _tail(re_x: mp.mpf, n: int) -> mp.mpf:
    return mp.exp(-mp.pi * n * n * re_x) / -mp.expm1(-mp.pi * (2 * n + 1) * re_x)


def theta_w(arg: ThetaArg | ComplexValue, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """w(x) with absolute error at most ``ctx.abs_tol``.

    Sums n = 1..N-1 and bounds the rest by the geometric majorant
    sum_{n>=N} e^{-pi n^2 r} <= e^{-pi N^2 r} / (1 - e^{-pi (2N+1) r}), r = Re x.
    """
    if not isinstance(arg, ThetaArg):
        arg = ThetaArg(as_value(arg))
    x = arg.x
    with ctx.workprec():
        r = x.re
        target = ctx.abs_tol / 4
        n = max(2, _terms_needed(float(r), float(mp.log(target))))
        z = x.value
        total = mp.fsum(mp.exp(-mp.pi * k * k * z) for k in range(1, n))
        tail = _tail(r, n)
        # derivative |w'(x)| <= pi sum n^2 e^{-pi n^2 r}
        dw = mp.pi * mp.fsum(k * k * mp.exp(-mp.pi * k * k * r) for k in range(1, n + 1))
        err = tail + dw * x.err_bound + (n + 4) * ctx.ulp * (abs(total) + 1) / 2**8
        return ComplexValue(+total.real, +total.imag, err + 2 * ctx.ulp * abs(total))


@lru_cache(maxsize=None)
def _touchard(k: int) -> tuple:
    """Coefficients of T_k(y) = sum_j S(k, j) y^j (Stirling numbers of the 2nd kind)."""
    row = [1]
    for m in range(k):
        nxt = [0] * (len(row) + 1)
        for j, c in enumerate(row):
            nxt[j] += j * c
            nxt[j + 1] += c
        row = nxt
    return tuple(row)


def _poly(coeffs, y):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def theta_w_deriv(b, order: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """d^k/db^k w(e^{ib}) by termwise differentiation.

    With y = -pi n^2 e^{ib}, (d/db)^k e^{y} = i^k T_k(y) e^{y} where T_k is the
    Touchard polynomial.  Terms are summed until the majorant
    beta_n = T_k(pi n^2) e^{-pi n^2 cos b} is past its peak and the geometric
    tail beta_N / (1 - q), q = beta_{N+1} / beta_N, is below target.
    """
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    check_arc(b)
    coeffs = _touchard(order)
    with ctx.workprec(8 + 2 * order):
        bb = mp.mpf(b)
        u = mp.expj(bb)
        r = mp.cos(bb)
        target = ctx.abs_tol / 4
        total = mp.mpc(0)
        n = 1
        prev = None
        while True:
            y = -mp.pi * n * n * u
            total += _poly(coeffs, y) * mp.exp(y)
            n += 1
            beta = _poly(coeffs, mp.pi * n * n) * mp.exp(-mp.pi * n * n * r)
            if prev is not None and beta < prev:
                beta_next = _poly(coeffs, mp.pi * (n + 1) ** 2) * mp.exp(-mp.pi * (n + 1) ** 2 * r)
                q = beta_next / beta
                if q < 1:
                    tail = beta / (1 - q)
                    if tail < target:
                        break
            prev = beta
            if n > 100000:
                raise ArithmeticError("theta derivative series did not converge")
        total *= mp.mpc(0, 1) ** order
        err = tail + 4 * n * ctx.ulp * (abs(total) + 1)
        return ComplexValue(+total.real, +total.imag, err)


def one_plus_two_w(arg, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    w = theta_w(arg, ctx)
    with ctx.workprec():
        return 1 + 2 * w


def functional_equation_residual(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mp.mpf, mp.mpf]:
    """|(1+2w(x)) - x^{-1/2}(1+2w(1/x))| and the combined error bound of both sides."""
    x = as_value(x)
    with ctx.workprec():
        if x.re <= 0:
            raise DomainError("theta functional equation needs Re x > 0")
        inv = 1 / x.value
        x_inv = ComplexValue(inv.real, inv.imag, x.err_bound / abs(x.value) ** 2 + ctx.ulp)
        lhs = one_plus_two_w(ThetaArg(x), ctx)
        rhs_theta = one_plus_two_w(ThetaArg(x_inv), ctx)
        root = 1 / mp.sqrt(x.value)
        rhs = rhs_theta.value * root
        rhs_err = rhs_theta.err_bound * abs(root) + 4 * ctx.ulp * abs(rhs)
        residual = abs(lhs.value - rhs)
        return residual, lhs.err_bound + rhs_err
