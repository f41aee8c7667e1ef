"""Contour identities for weighted integrals of F along vertical lines.

Shifting the Mellin line of w(x) to Re u = 1/2 + alpha picks up the poles of
F(u) x^{-u/2} at u = 1 (residue x^{-1/2}) and u = 0 (residue -1) that lie
inside the contour, each counted with weight 1/2 when the line passes
through it (principal value).  This gives the base identity

    (1/2pi) int x^{-1/4-alpha/2-it/2} F_alpha(t) dt = 2 w(x) - c1 x^{-1/2} + c0,

from w(x) = (1/4pi i) int_{(c)} F(u) x^{-u/2} du with c > 1.  With x = e^{ib}
the left side is G(b) = (1/2pi) int e^{bt/2} F_alpha(t) dt and

    G(b) = 2 e^{ib(alpha/2 + 1/4)} w(e^{ib}) - c1 e^{ib(alpha/2 - 1/4)} + c0 e^{ib(alpha/2 + 1/4)}.

Because F_alpha(-t) = conj F_alpha(t), the even/odd halves are

    (1/pi) int_0^inf cosh(bt/2) Re F_alpha(t) dt = Re G(b),
    (1/pi) int_0^inf sinh(bt/2) Im F_alpha(t) dt = Im G(b),

and differentiating m times in b multiplies the kernel by (t/2)^m and swaps
cosh/sinh on odd m.  Both sides are computed independently here: the left by
quadrature of sampled F_alpha(t), the right from G^{(m)}(b) with
termwise-differentiated theta derivatives.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import mpmath as mp

from .completed import LinePoint, F_line
from .numerics import DEFAULT_CONTEXT, ComplexValue, DomainError, PrecisionContext, XiLabError, as_value
from .quadrature import integrate
from .theta import B_MAX, ThetaArg, check_arc, theta_w, theta_w_deriv

REGIMES = ("interior", "left", "right", "boundary")
WEIGHTS = ("exp_plus", "exp_minus", "cosh", "sinh")

# Panel grid for the t-integrals; t_max is always a multiple of this.
PANEL_WIDTH = 16
PV_WIDTH = PANEL_WIDTH
DEFAULT_TOL = 1e-14


class ConvergenceError(XiLabError, ValueError):
    """Requested b at or beyond pi/2, where the t-integral stops converging absolutely."""


class PrincipalValueError(XiLabError, ValueError):
    """Boundary line requested without principal-value handling."""


def regime_of(alpha) -> str:
    a = mp.mpf(alpha)
    if abs(a) == mp.mpf(0.5):
        return "boundary"
    if a < -0.5:
        return "left"
    if a > 0.5:
        return "right"
    return "interior"


def pole_weights(alpha) -> tuple[mp.mpf, mp.mpf]:
    """(c1, c0): multiplicities of the u = 1 and u = 0 poles inside the contour."""
    a = mp.mpf(alpha)
    half = mp.mpf(0.5)
    c1 = 1 if a < half else (half if a == half else 0)
    c0 = 1 if a < -half else (half if a == -half else 0)
    return mp.mpf(c1), mp.mpf(c0)


@dataclass(frozen=True)
class IdentitySpec:
    alpha: float
    b: float | None = None
    weight: str = "cosh"
    deriv_order: int = 0
    x: complex | None = None
    regime: str | None = None
    pv: bool = True

    def __post_init__(self) -> None:
        if self.weight not in WEIGHTS:
            raise ValueError(f"unknown weight {self.weight!r}")
        if self.deriv_order < 0:
            raise ValueError("deriv_order must be >= 0")
        expected = regime_of(self.alpha)
        if self.regime is None:
            object.__setattr__(self, "regime", expected)
        elif self.regime != expected:
            raise ValueError(f"regime {self.regime!r} inconsistent with alpha={self.alpha} ({expected})")
        if (self.b is None) == (self.x is None):
            raise ValueError("give exactly one of b or x")
        if self.x is not None:
            if self.weight not in ("exp_plus", "exp_minus") or self.deriv_order:
                raise ValueError("the x form supports only exp weights with deriv_order 0")
            if complex(self.x).real <= 0:
                raise DomainError("x must have Re x > 0")
        else:
            if abs(self.b) >= math.pi / 2:
                raise ConvergenceError(f"b={self.b} >= pi/2: integral not absolutely convergent")
            check_arc(self.b)
        if self.regime == "boundary" and not self.pv:
            raise PrincipalValueError("alpha = +-1/2 needs principal-value handling (pv=True)")

    @property
    def part(self) -> str:
        return {"cosh": "re", "sinh": "im"}.get(self.weight, "complex")

    @property
    def decay_angle(self) -> float:
        """|b| for arc specs, |arg x| otherwise: the kernel grows like e^{angle t/2}."""
        if self.x is not None:
            return abs(math.atan2(complex(self.x).imag, complex(self.x).real))
        return abs(self.b)

    def label(self) -> str:
        where = f"b={self.b:g}" if self.x is None else f"x={complex(self.x)}"
        return f"alpha={self.alpha:g} {where} m={self.deriv_order} {self.weight}"


@dataclass
class QuadratureResult:
    value: ComplexValue
    err_estimate: mp.mpf
    t_max: float
    nodes: int


# ---------------------------------------------------------------------------
# Sampling F along a line


class LineSampler:
    """Memoized F_alpha(t) on one line, plus an empirical decay envelope.

    On the boundary lines the pole part P(t) = -i sign(alpha) / t is removed
    on [0, PV_WIDTH] and integrated separately.
    """

    def __init__(self, alpha, ctx: PrecisionContext = DEFAULT_CONTEXT):
        self.alpha = mp.mpf(alpha)
        self.ctx = ctx
        self.values: dict = {}
        self.boundary = regime_of(alpha) == "boundary"
        self._envelope = None
        self.evaluations = 0

    def F(self, t) -> ComplexValue:
        v = self.values.get(t)
        if v is None:
            v = F_line(LinePoint(self.alpha, t), self.ctx)
            self.values[t] = v
            self.evaluations += 1
        return v

    def regular(self, t) -> mp.mpc:
        """F minus its pole part; only meaningful on boundary lines."""
        if t == 0:
            return mp.mpc((mp.euler - mp.log(4 * mp.pi)) / 2)
        return self.F(t).value + mp.mpc(0, mp.sign(self.alpha)) / t

    def envelope(self) -> tuple[mp.mpf, mp.mpf]:
        """(C, c) with |F_alpha(t)| <= C t^c e^{-pi t/4} for t >= 10.

        c combines the Stirling exponent of Gamma(s/2) with the convexity
        exponent of zeta; C is the sampled maximum times a safety factor 10.
        """
        if self._envelope is None:
            sigma = float(self.alpha) + 0.5
            mu = 0.0 if sigma >= 1 else ((1 - sigma) / 2 if sigma >= 0 else 0.5 - sigma)
            c = mp.mpf((sigma - 1) / 2 + mu)
            with self.ctx.workprec():
                probes = [mp.mpf(t) for t in range(10, 201, 10)]
                peak = max(abs(self.F(t).value) * t ** -c * mp.exp(mp.pi * t / 4) for t in probes)
            self._envelope = (10 * peak, c)
        return self._envelope


def _tail_bound(sampler: LineSampler, spec: IdentitySpec, T) -> mp.mpf:
    C, c = sampler.envelope()
    m = spec.deriv_order
    delta = (mp.pi / 2 - mp.mpf(spec.decay_angle)) / 2
    a = m + c + 1
    scale = C / (mp.pi * 2 ** m)
    if spec.x is not None:
        scale *= abs(mp.mpc(spec.x)) ** (-mp.mpf(0.25) - sampler.alpha / 2)
    return scale * delta ** (-a) * mp.gammainc(a, delta * T)


def choose_t_max(sampler: LineSampler, spec: IdentitySpec, tail_tol) -> float:
    T = PANEL_WIDTH * 4
    while _tail_bound(sampler, spec, T) > tail_tol:
        T += PANEL_WIDTH
    return float(T)


# ---------------------------------------------------------------------------
# Kernels


def _even_odd(m: int, base: str):
    """d^m/db^m of cosh(bt/2) or sinh(bt/2) is (t/2)^m times this function of bt/2."""
    swap = m % 2 == 1
    if base == "cosh":
        return mp.sinh if swap else mp.cosh
    return mp.cosh if swap else mp.sinh


def _make_integrand(spec: IdentitySpec, sampler: LineSampler, pv_zone: bool):
    m = spec.deriv_order
    a = sampler.alpha
    value_at = sampler.regular if pv_zone else (lambda t: sampler.F(t).value)
    inv_pi = 1 / mp.pi
    if spec.weight in ("cosh", "sinh"):
        fn = _even_odd(m, spec.weight)
        half_b = mp.mpf(spec.b) / 2
        take = (lambda z: z.real) if spec.weight == "cosh" else (lambda z: z.imag)

        def f(ts):
            return [inv_pi * (t / 2) ** m * fn(half_b * t) * take(value_at(t)) for t in ts]

        return f

    if spec.x is not None:
        x = mp.mpc(spec.x) if spec.weight == "exp_plus" else 1 / mp.mpc(spec.x)
        lx = mp.log(x)
        pref = mp.exp((-mp.mpf(0.25) - a / 2) * lx) / (2 * mp.pi)

        def kernel(t):
            return pref * mp.exp(-mp.mpc(0, 1) * t / 2 * lx)
    else:
        sgn = 1 if spec.weight == "exp_plus" else -1
        half_b = sgn * mp.mpf(spec.b) / 2

        def kernel(t):
            return (sgn * t / 2) ** m * mp.exp(half_b * t) / (2 * mp.pi)

    def f(ts):
        out = []
        for t in ts:
            z = value_at(t)
            out.append(kernel(t) * z + kernel(-t) * mp.conj(z))
        return out

    f.kernel = kernel
    return f


def pole_correction(spec: IdentitySpec, ctx: PrecisionContext = DEFAULT_CONTEXT, width=PV_WIDTH) -> mp.mpc:
    """Integral over (0, width) of the kernel against the pole part P = -i sign(alpha)/t.

    For cosh the pole part is imaginary and drops out.  The sinh and exp
    kernels reduce to sum_j (b/2)^j t^{m+j-1} / (j! 2^m) over one parity of j,
    integrated termwise.
    """
    eps = mp.sign(mp.mpf(spec.alpha))
    with ctx.workprec():
        E = mp.mpf(width)
        if spec.weight == "cosh":
            return mp.mpc(0)
        if spec.x is not None:
            f = _make_integrand(spec, LineSampler(spec.alpha, ctx), pv_zone=False).kernel
            # (k(t) - k(-t)) / t is entire; the node at t = 0 takes its limit
            d = mp.diff(lambda t: f(t) - f(-t), 0)
            res = integrate(lambda ts: [(f(t) - f(-t)) / t if t else d for t in ts], 0, E, ctx.abs_tol, n=32)
            return -mp.mpc(0, 1) * eps * res.value
        m = spec.deriv_order
        b2 = mp.mpf(spec.b) / 2
        sgn = 1 if spec.weight != "exp_minus" else -1
        # parity of j: sinh family of order m uses odd j for even m
        j = 1 if m % 2 == 0 else 0
        if j == 0 and m == 0:
            j = 2
        total = mp.mpf(0)
        tol = mp.ldexp(1, -mp.mp.prec)
        while True:
            if m + j >= 1:
                term = b2 ** j * E ** (m + j) / (mp.factorial(j) * 2 ** m * (m + j))
                total += term
                if term < tol * abs(total) and j > 4:
                    break
            j += 2
        if spec.weight == "sinh":
            # (1/pi) int K(t) Im P(t) dt with Im P = -sign(alpha)/t
            return mp.mpc(-eps * total / mp.pi)
        # exp forms: P (k(t) - k(-t)) with k(t) - k(-t) = (sgn)^m (1/pi) (t/2)^m S_m(sgn b t/2)
        return mp.mpc(0, -eps) * sgn * total / mp.pi


def lhs_integral(spec: IdentitySpec, ctx: PrecisionContext = DEFAULT_CONTEXT,
                 sampler: LineSampler | None = None, tol=DEFAULT_TOL,
                 t_max: float | None = None, panel_nodes: int = 96) -> QuadratureResult:
    """Quadrature of the weighted t-integral on (0, t_max], plus a tail bound."""
    if sampler is None:
        sampler = LineSampler(spec.alpha, ctx)
    with ctx.workprec():
        tol = mp.mpf(tol)
        if t_max is None:
            t_max = choose_t_max(sampler, spec, tol / 10)
        tail = _tail_bound(sampler, spec, t_max)
        total = mp.mpc(0)
        err = mp.mpf(0)
        nodes = 0
        mass = mp.mpf(0)
        start = mp.mpf(0)
        if spec.regime == "boundary":
            near = integrate(_make_integrand(spec, sampler, True), 0, PV_WIDTH, tol / 4, n=panel_nodes)
            corr = pole_correction(spec, ctx)
            total += near.value + corr
            err += near.err
            nodes += near.nodes
            mass += near.abs_mass
            start = mp.mpf(PV_WIDTH)
        panels = max(1, int((t_max - float(start)) // PANEL_WIDTH))
        far = integrate(_make_integrand(spec, sampler, False), start, t_max, tol / 2,
                        n=panel_nodes, initial_panels=panels)
        total += far.value
        nodes += far.nodes
        mass += far.abs_mass
        err += far.err + tail + 16 * mass * ctx.ulp
        if spec.weight in ("cosh", "sinh"):
            total = mp.mpc(total.real)
        value = ComplexValue(+total.real, +total.imag, err)
        return QuadratureResult(value, err, float(t_max), nodes)


# ---------------------------------------------------------------------------
# Closed forms


def G_derivative(alpha, b, m: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """m-th b-derivative of G(b) = (1/2pi) int e^{bt/2} F_alpha(t) dt."""
    c1, c0 = pole_weights(alpha)
    with ctx.workprec():
        a = mp.mpf(alpha)
        bb = mp.mpf(b)
        lam_m = a / 2 - mp.mpf(0.25)
        lam_p = a / 2 + mp.mpf(0.25)
        I = mp.mpc(0, 1)
        ep = mp.expj(bb * lam_p)
        value = c0 * (I * lam_p) ** m * ep - c1 * (I * lam_m) ** m * mp.expj(bb * lam_m)
        err = mp.mpf(0)
        for j in range(m + 1):
            wj = theta_w_deriv(bb, j, ctx)
            coeff = 2 * mp.binomial(m, j) * (I * lam_p) ** (m - j) * ep
            value += coeff * wj.value
            err += abs(coeff) * wj.err_bound
        err += 8 * ctx.ulp * (abs(value) + 1)
        return ComplexValue(+value.real, +value.imag, err)


def rhs_closed_form(spec: IdentitySpec, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """Right-hand side of the identity selected by ``spec``."""
    c1, c0 = pole_weights(spec.alpha)
    with ctx.workprec():
        if spec.x is not None:
            x = mp.mpc(spec.x) if spec.weight == "exp_plus" else 1 / mp.mpc(spec.x)
            w = theta_w(ThetaArg(ComplexValue(x.real, x.imag)), ctx)
            v = 2 * w.value - c1 / mp.sqrt(x) + c0
            return ComplexValue(+v.real, +v.imag, 2 * w.err_bound + 8 * ctx.ulp * (abs(v) + 1))
        m = spec.deriv_order
        if spec.weight == "exp_minus":
            g = G_derivative(spec.alpha, -spec.b, m, ctx)
            return g if m % 2 == 0 else -g
        g = G_derivative(spec.alpha, spec.b, m, ctx)
        if spec.weight == "exp_plus":
            return g
        if spec.weight == "cosh":
            return ComplexValue(g.re, mp.mpf(0), g.err_bound)
        return ComplexValue(g.im, mp.mpf(0), g.err_bound)


def printed_forms(spec: IdentitySpec, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[tuple[str, mp.mpc]]:
    """The displayed closed forms that apply to ``spec``, in one-sided normalization.

    Two-sided displays over (-inf, inf) are divided by 2 (cosh) or 2i (sinh)
    so every value is directly comparable with ``lhs_integral``.  Only b-form
    specs with deriv_order 0 have displayed right sides.
    """
    if spec.x is not None or spec.deriv_order:
        return []
    out = []
    with ctx.workprec():
        a = mp.mpf(spec.alpha)
        b = mp.mpf(spec.b)
        theta = 1 + 2 * theta_w(ThetaArg.arc(spec.b, ctx), ctx).value
        A = mp.expj(b * (mp.mpf(0.25) + a / 2))
        B = mp.expj(-b * (-mp.mpf(0.25) + a / 2))
        q = mp.mpf(0.25)
        if spec.regime == "interior":
            if spec.weight == "cosh":
                two_sided = 2 * mp.cos(b * q - a * b / 2) + 2 * mp.cos(b * q + b * a / 2) - (B + A) * theta
                out.append(("cosh_two_sided", two_sided / 2))
                out.append(("cosh_real_part", mp.mpc(mp.cos(b * q - a * b / 2) + mp.cos(b * q + a * b / 2)
                                           - ((A + B) * theta).real / 2)))
                if a == 0:
                    out.append(("critical_cosh", 2 * mp.cos(b / 4) - mp.expj(b / 4) * theta))
            elif spec.weight == "sinh":
                two_sided = (-2j * mp.sin(b * q - a * b / 2) + 2j * mp.sin(b * q + b * a / 2)
                       - (-B + A) * theta)
                out.append(("sinh_two_sided", two_sided / 2j))
                out.append(("sinh_imag_part", mp.mpc(-mp.sin(b * q + a * b / 2) + mp.sin(b * q - a * b / 2)
                                           - ((A - B) * theta).imag / 2)))
            elif spec.weight == "exp_plus":
                out.append(("base_plus", A * (mp.expj(-b / 2) - (theta - 1))))
            else:
                out.append(("base_minus", B - B * theta + mp.expj(-b * (q + a / 2))))
        elif spec.regime == "left" and spec.weight == "exp_plus":
            out.append(("left_exp", A * (mp.expj(-b / 2) - theta)))
        elif spec.regime == "boundary" and a > 0:
            e = mp.expj(b / 2)
            if spec.weight == "cosh":
                v = 2 + 2 * mp.cos(b / 2) - ((1 / e + e) * theta).real
                out.append(("boundary_cosh", mp.mpc(v / 2)))
            elif spec.weight == "sinh":
                v = 2 * mp.sin(b / 2) - ((-1 / e + e) * theta).imag
                out.append(("boundary_sinh", mp.mpc(v / 2)))
    return out


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class PrintedCheck:
    label: str
    value: mp.mpc
    residual: mp.mpf
    consistent: bool
    # residual against -lhs, i.e. the printed form with its overall sign reversed
    residual_negated: mp.mpf = mp.mpf(0)
    consistent_negated: bool = False


@dataclass
class IdentityReport:
    spec: IdentitySpec
    lhs: ComplexValue
    rhs: ComplexValue
    residual: mp.mpf
    err_budget: mp.mpf
    quadrature: QuadratureResult
    printed: list = field(default_factory=list)
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.residual <= self.err_budget


BUDGET_MARGIN = 10


def verify_identity(spec: IdentitySpec, ctx: PrecisionContext = DEFAULT_CONTEXT,
                    sampler: LineSampler | None = None, **quad_options) -> IdentityReport:
    """Compare quadrature and closed form; a failure is reported, not raised."""
    started = time.perf_counter()
    quad = lhs_integral(spec, ctx, sampler, **quad_options)
    rhs = rhs_closed_form(spec, ctx)
    with ctx.workprec():
        residual = abs(quad.value.value - rhs.value)
        budget = BUDGET_MARGIN * (quad.err_estimate + rhs.err_bound)
        printed = []
        for label, v in printed_forms(spec, ctx):
            r = abs(quad.value.value - v)
            rn = abs(quad.value.value + v)
            printed.append(PrintedCheck(label, v, r, bool(r <= budget), rn, bool(rn <= budget)))
    return IdentityReport(spec, quad.value, rhs, residual, budget, quad, printed,
                          (time.perf_counter() - started) * 1000)


# ---------------------------------------------------------------------------
# Limit forms at b -> pi/2


def _printed_bracket(p: int, a: mp.mpf, weight: str, regime: str, odd: bool) -> mp.mpf:
    k = 2 * p + 1 if odd else 2 * p
    lo, hi = 1 - 2 * a, 1 + 2 * a
    pi8 = mp.pi / 8
    if weight == "cosh":
        f = mp.sin if odd else mp.cos
    else:
        f = mp.cos if odd else mp.sin
    if regime == "boundary":
        return f(mp.pi / 4)
    if weight == "cosh":
        terms = {"interior": (1, 1), "left": (1, 0), "right": (0, 1)}[regime]
        return terms[0] * lo ** k * f(pi8 * lo) + terms[1] * hi ** k * f(pi8 * hi)
    terms = {"interior": (1, -1), "left": (1, 0), "right": (0, -1)}[regime]
    return terms[0] * lo ** k * f(pi8 * lo) + terms[1] * hi ** k * f(pi8 * hi)


def limit_moment_value(m: int, alpha, weight: str) -> mp.mpf:
    """Exact b -> pi/2 limit of the m-th derivative identity (theta terms vanish).

    Equals Re (cosh) or Im (sinh) of -d^m/db^m [c1 e^{ib lam-} + (1-c0) e^{ib lam+}]
    at b = pi/2, lam-+ = alpha/2 -+ 1/4; the e^{ib lam+} part comes from
    2w = Theta - 1 with Theta and its derivatives vanishing in the limit.
    """
    c1, c0 = pole_weights(alpha)
    a = mp.mpf(alpha)
    b = mp.pi / 2
    I = mp.mpc(0, 1)
    lm, lp = a / 2 - mp.mpf(0.25), a / 2 + mp.mpf(0.25)
    v = -(c1 * (I * lm) ** m * mp.expj(b * lm) + (1 - c0) * (I * lp) ** m * mp.expj(b * lp))
    return v.real if weight == "cosh" else v.imag


def _sign(x, tol=mp.mpf(10) ** -30) -> int:
    return 0 if abs(x) <= tol else (1 if x > 0 else -1)


def moment_rhs_sign(p: int, alpha, regime: str | None = None, odd: bool = False,
                    weight: str = "cosh", printed: bool = True) -> int:
    """Sign of the b -> pi/2 right side of the order-2p (or 2p+1) moment identity.

    ``printed=True`` evaluates the displayed square bracket times (-1)^p;
    ``printed=False`` evaluates ``limit_moment_value`` instead.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    if weight not in ("cosh", "sinh"):
        raise ValueError("moment signs are defined for cosh and sinh weights")
    regime = regime or regime_of(alpha)
    with mp.workprec(128):
        if printed:
            return (-1) ** p * _sign(_printed_bracket(p, mp.mpf(alpha), weight, regime, odd))
        m = 2 * p + 1 if odd else 2 * p
        return _sign(limit_moment_value(m, alpha, weight))


# ---------------------------------------------------------------------------
# Matrix runs


MATRIX_ALPHAS = (-1.5, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.5)
MATRIX_BS = (0.6, 1.0, 1.4)
MATRIX_MS = (0, 1, 2, 3, 4)
MATRIX_WEIGHTS = ("cosh", "sinh")


def identity_matrix(alphas: Iterable = MATRIX_ALPHAS, bs: Iterable = MATRIX_BS,
                    ms: Iterable = MATRIX_MS, weights: Iterable = MATRIX_WEIGHTS) -> list[IdentitySpec]:
    """Specs in canonical (alpha, b, m, weight) order."""
    return [IdentitySpec(alpha=float(a), b=float(b), weight=w, deriv_order=int(m))
            for a in alphas for b in bs for m in ms for w in weights]


def _verify_group(args) -> list[IdentityReport]:
    specs, bits, quad_options = args
    ctx = PrecisionContext(bits)
    sampler = LineSampler(specs[0].alpha, ctx)
    return [verify_identity(s, ctx, sampler, **quad_options) for s in specs]


def run_matrix(specs: Sequence[IdentitySpec], ctx: PrecisionContext = DEFAULT_CONTEXT,
               workers: int = 1, **quad_options) -> list[IdentityReport]:
    """Verify many specs, sharing F samples per alpha; output keeps input order."""
    groups: dict = {}
    for i, s in enumerate(specs):
        groups.setdefault(s.alpha, []).append((i, s))
    jobs = [([s for _, s in items], ctx.working_bits, quad_options) for items in groups.values()]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_group, jobs))
    else:
        results = [_verify_group(j) for j in jobs]
    out: list = [None] * len(specs)
    for items, reports in zip(groups.values(), results):
        for (i, _), r in zip(items, reports):
            out[i] = r
    return out
