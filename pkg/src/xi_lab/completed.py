"""F(s) = pi^{-s/2} Gamma(s/2) zeta(s) by two independent routes.

``F_product`` multiplies the separately computed factors.  ``F_integral``
uses the theta-kernel representation

    F(s) = 1/(s(s-1)) + int_1^inf (x^{s/2-1} + x^{-(1+s)/2}) w(x) dx,

integrated in u = log x.  The imaginary part of the same representation on a
vertical line gives the equation returned by ``im_equation_sides``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp

from .numerics import DEFAULT_CONTEXT, ComplexValue, PoleError, PrecisionContext, as_value
from .quadrature import QuadratureError, integrate
from .special import log_gamma_raw, zeta
from .theta import theta_w, ThetaArg


def _exact(x) -> mp.mpf:
    """mpf inputs are kept as given; floats convert exactly; strings at 200 bits."""
    if isinstance(x, mp.mpf):
        return x
    with mp.workprec(max(mp.mp.prec, 200)):
        return mp.mpf(x)


@dataclass(frozen=True)
class LinePoint:
    """(alpha, t) on the line s = 1/2 + alpha + i t."""

    alpha: mp.mpf
    t: mp.mpf

    def __init__(self, alpha, t):
        object.__setattr__(self, "alpha", _exact(alpha))
        object.__setattr__(self, "t", _exact(t))

    @property
    def s(self) -> mp.mpc:
        with mp.workprec(max(mp.mp.prec, 256)):
            return mp.mpc(mp.mpf(0.5) + self.alpha, self.t)

    def check(self) -> None:
        if self.t == 0 and abs(self.alpha) == mp.mpf(0.5):
            raise PoleError("s=1" if self.alpha > 0 else "s=0")


def _check_poles(s: mp.mpc) -> None:
    if s == 0:
        raise PoleError("s=0")
    if s == 1:
        raise PoleError("s=1")


def _near_trivial_zero(s: mp.mpc) -> bool:
    if s.real > -1:
        return False
    k = mp.nint(-s.real / 2)
    return k >= 1 and abs(s + 2 * k) < 0.25


def F_product(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """F(s) as the product pi^{-s/2} Gamma(s/2) zeta(s).

    Near the trivial zeros s = -2, -4, ... the Gamma pole cancels a zeta zero;
    there F(1-s) is evaluated instead (F(s) = F(1-s)).
    """
    s = as_value(s)
    with ctx.workprec():
        z = s.value
        _check_poles(z)
        if _near_trivial_zero(z):
            return F_product(ComplexValue(1 - s.re, -s.im, s.err_bound), ctx)
        half = z / 2
        lg, rem = log_gamma_raw(half, ctx.bits)
        g = mp.exp(lg - half * mp.log(mp.pi))
        zv = zeta(s, ctx)
        value = g * zv.value
        rel = 2 * rem + 8 * ctx.ulp + zv.err_bound / max(abs(zv.value), mp.mpf(10) ** (-mp.mp.dps))
        err = abs(value) * rel
        if s.err_bound:
            err += abs(value) * s.err_bound * (abs(mp.log(abs(z) + 2)) + 4)
        return ComplexValue(+value.real, +value.imag, err)


def F_line(p: LinePoint, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """F_alpha(t) = F(1/2 + alpha + i t)."""
    p.check()
    with ctx.workprec():
        sigma = mp.mpf(0.5) + p.alpha
    return F_product(ComplexValue(sigma, p.t), ctx)


@dataclass(frozen=True)
class IntegralRepPlan:
    x_max: float
    quad_nodes: int
    tail_bound: float
    tol: float


def _tail_bound(alpha, x_max) -> mp.mpf:
    # |integrand| <= 2 x^c w(x), c = -3/4 + |alpha|/2, and w(x) <= 1.0001 e^{-pi x} for x >= 1
    c = mp.mpf(-0.75) + abs(mp.mpf(alpha)) / 2
    return mp.mpf(2.0002) * mp.pi ** (-c - 1) * mp.gammainc(c + 1, mp.pi * x_max)


def integral_plan(alpha, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=None, quad_nodes: int = 32) -> IntegralRepPlan:
    """Choose x_max so the truncated tail of int_1^inf is below tol / 10."""
    with ctx.workprec():
        # default target: the working accuracy, capped at 2^-100 to bound cost
        tol = mp.mpf(tol) if tol is not None else max(ctx.abs_tol, mp.ldexp(1, -100))
        x_max = mp.mpf(4)
        while _tail_bound(alpha, x_max) > tol / 10:
            x_max *= mp.mpf(1.25)
        return IntegralRepPlan(float(x_max), quad_nodes, float(_tail_bound(alpha, x_max)), float(tol))


class _KernelCache:
    """w(e^u) memoized by node; nodes repeat across evaluations with one plan."""

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx
        self.values: dict = {}

    def __call__(self, us):
        out = []
        for u in us:
            v = self.values.get(u)
            if v is None:
                v = theta_w(ThetaArg(ComplexValue(mp.exp(u))), self.ctx).re
                self.values[u] = v
            out.append(v)
        return out


_KERNELS: dict = {}


def _kernel(ctx: PrecisionContext) -> _KernelCache:
    k = _KERNELS.get(ctx)
    if k is None:
        k = _KERNELS[ctx] = _KernelCache(ctx)
    return k


def _oscillation_panels(t, u_max) -> int:
    return max(1, int(abs(float(t)) * float(u_max) / (4 * math.pi)) + 1)


def F_integral(s, plan: IntegralRepPlan | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """F(s) from the theta-kernel integral representation."""
    s = as_value(s)
    with ctx.workprec():
        z = s.value
        _check_poles(z)
        alpha = z.real - mp.mpf(0.5)
        if plan is None:
            plan = integral_plan(alpha, ctx)
        if plan.tail_bound > max(plan.tol, float(ctx.abs_tol)):
            raise QuadratureError(f"tail bound {plan.tail_bound:.3g} above target")
        u_max = mp.log(plan.x_max)
        a1, a2 = z / 2, (1 - z) / 2
        kern = _kernel(ctx)

        def f(us):
            ws = kern(us)
            return [(mp.exp(a1 * u) + mp.exp(a2 * u)) * w for u, w in zip(us, ws)]

        res = integrate(f, 0, u_max, plan.tol / 2, n=plan.quad_nodes,
                        initial_panels=_oscillation_panels(z.imag, u_max))
        value = res.value + 1 / (z * (z - 1))
        err = res.err + mp.mpf(plan.tail_bound) + res.abs_mass * 16 * ctx.ulp + 4 * ctx.ulp * abs(value)
        return ComplexValue(+value.real, +value.imag, err)


class ImEquation(NamedTuple):
    lhs: mp.mpf
    rhs: mp.mpf
    err_bound: mp.mpf


def im_equation_sides(p: LinePoint, plan: IntegralRepPlan | None = None,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> ImEquation:
    """Both sides of

        int_1^inf x^{-3/4} (x^{a/2} - x^{-a/2}) sin((t/2) ln x) w(x) dx
            = 2 a t / ((a^2 - 1/4 - t^2)^2 + 4 a^2 t^2).

    For every (alpha, t), lhs - rhs equals Im F_alpha(t); zeros of Im F are
    exactly the solutions of the equation.
    """
    p.check()
    with ctx.workprec():
        a, t = p.alpha, p.t
        rhs = 2 * a * t / ((a * a - mp.mpf(0.25) - t * t) ** 2 + 4 * a * a * t * t)
        if a == 0:
            return ImEquation(mp.mpf(0), rhs, mp.mpf(0))
        if plan is None:
            plan = integral_plan(a, ctx)
        u_max = mp.log(plan.x_max)
        kern = _kernel(ctx)

        def f(us):
            ws = kern(us)
            return [mp.exp(u / 4) * 2 * mp.sinh(a * u / 2) * mp.sin(t * u / 2) * w
                    for u, w in zip(us, ws)]

        res = integrate(f, 0, u_max, plan.tol / 2, n=plan.quad_nodes,
                        initial_panels=_oscillation_panels(t, u_max))
        err = res.err + mp.mpf(plan.tail_bound) + res.abs_mass * 16 * ctx.ulp + 4 * ctx.ulp * abs(rhs)
        return ImEquation(+res.value.real, +rhs, err)
