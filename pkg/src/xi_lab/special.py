"""Gamma and zeta for complex arguments.

Gamma uses the Stirling series after shifting the argument to the right by
the recurrence; zeta uses Euler--Maclaurin summation.  Both return explicit
remainder bounds, and both are written against raw mpmath arithmetic (only
Bernoulli numbers come from mpmath).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .numerics import DEFAULT_CONTEXT, ComplexValue, PoleError, PrecisionContext, as_value

# Supported window; outside it evaluation still runs, bounds just get looser.
T_MAX_SUPPORTED = 500.0
ALPHA_MAX_SUPPORTED = 8.0


@lru_cache(maxsize=None)
def _bernoulli_table(count: int, bits: int) -> tuple:
    """B_2, B_4, ..., B_{2*count} at ``bits`` precision."""
    with mp.workprec(bits):
        return tuple(+mp.bernoulli(2 * k) for k in range(1, count + 1))


def _is_nonpositive_integer(z: mp.mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == mp.floor(z.real)


def _stirling_log(z: mp.mpc, bits: int) -> tuple[mp.mpc, mp.mpf]:
    """log Gamma(z) for Re z >= 1, |z| large; returns (value, remainder bound)."""
    eps = mp.ldexp(mp.mpf(1), -bits)
    az = abs(z)
    value = (z - mp.mpf(0.5)) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    kmax = max(8, bits // 2)
    bern = _bernoulli_table(kmax + 1, bits)
    zinv2 = 1 / (z * z)
    power = 1 / z
    # For Re z > 0 the remainder is at most sec^{2K+2}(arg z / 2) <= 2^{K+1}
    # times the first omitted term.
    for k in range(1, kmax + 1):
        term = bern[k - 1] / ((2 * k) * (2 * k - 1)) * power
        value += term
        power *= zinv2
        nxt = abs(bern[k]) / ((2 * k + 2) * (2 * k + 1)) / az ** (2 * k + 1)
        bound = nxt * mp.mpf(2) ** (k + 1)
        if bound < eps * abs(value):
            return value, bound
    return value, bound


def _shift_for(s: mp.mpc, radius: float) -> int:
    r = max(0, math.ceil(1 - float(s.real)))
    re, im = float(s.real) + r, abs(float(s.imag))
    if re * re + im * im < radius * radius:
        r += max(0, math.ceil(math.sqrt(radius * radius - im * im) - re))
    return r


def log_gamma_raw(s: mp.mpc, bits: int) -> tuple[mp.mpc, mp.mpf]:
    """A logarithm of Gamma(s) (branch irrelevant for exponentiation)."""
    s = mp.mpc(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"s={mp.nstr(s.real, 6)}", f"Gamma pole at s={mp.nstr(s.real, 6)}")
    r = _shift_for(s, 0.4 * bits + 4)
    prod = mp.mpc(1)
    for j in range(r):
        prod *= s + j
    value, rem = _stirling_log(s + r, bits)
    return value - mp.log(prod), rem


def gamma(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """Gamma(s) with relative accuracy set by ``ctx``."""
    s = as_value(s)
    with ctx.workprec(16):
        lg, rem = log_gamma_raw(s.value, ctx.bits)
        g = mp.exp(lg)
        # d/ds Gamma = Gamma psi, |psi| <~ log|s| + pi for the range we use.
        dpsi = abs(mp.log(abs(s.value) + 2)) + mp.pi + 1 / max(abs(s.value), mp.mpf("1e-30"))
        err = abs(g) * (rem * 2 + 8 * ctx.ulp + dpsi * s.err_bound)
        return ComplexValue(+g.real, +g.imag, err)


@dataclass(frozen=True)
class EulerMaclaurinPlan:
    cutoff_n: int
    bernoulli_terms: int
    tail_bound: float


def plan_zeta(s: mp.mpc, bits: int) -> EulerMaclaurinPlan:
    """Smallest direct-sum length N whose Euler--Maclaurin terms drop below 2^-bits.

    Term sizes are estimated in floats with |B_2k|/(2k)! ~ 2 (2 pi)^-2k; the
    rigorous remainder is checked during summation and N is enlarged if the
    estimate was optimistic.
    """
    sc = complex(s)
    scale = max(0.0, (1 - sc.real) * math.log2(max(abs(sc.imag), 2.0)))
    target = -bits + scale - 4
    n = max(6, int(abs(sc.imag) / (4 * math.pi)))
    l2pi = math.log2(2 * math.pi)
    while True:
        ln = math.log2(n)
        acc = 1.0 + math.log2(abs(sc)) if sc != 0 else 1.0
        best = math.inf
        for k in range(1, bits // 2 + 16):
            if k > 1:
                step = abs(sc + 2 * k - 3) * abs(sc + 2 * k - 2)
                if step == 0:
                    # s is a non-positive integer: the series terminates exactly
                    return EulerMaclaurinPlan(n, k, 0.0)
                acc += math.log2(step)
            v = acc - 2 * k * l2pi - (sc.real + 2 * k - 1) * ln
            if v < target:
                return EulerMaclaurinPlan(n, k, 2.0 ** v)
            if v > best:
                break
            best = v
        n = int(n * 1.15) + 1


@lru_cache(maxsize=8)
def _smallest_prime_factors(n: int) -> tuple:
    spf = list(range(n + 1))
    for p in range(2, int(n ** 0.5) + 1):
        if spf[p] == p:
            for q in range(p * p, n + 1, p):
                if spf[q] == q:
                    spf[q] = p
    return tuple(spf)


@lru_cache(maxsize=64)
def _log_primes(n: int, bits: int) -> dict:
    spf = _smallest_prime_factors(n)
    with mp.workprec(bits):
        return {p: mp.log(p) for p in range(2, n + 1) if spf[p] == p}


def _inverse_powers(s: mp.mpc, n: int, bits: int) -> list:
    """[k^{-s} for k = 0..n], exponentials only at primes (completely multiplicative)."""
    spf = _smallest_prime_factors(n)
    logp = _log_primes(n, bits)
    out = [mp.mpc(0), mp.mpc(1)] + [None] * (n - 1)
    for k in range(2, n + 1):
        p = spf[k]
        out[k] = mp.exp(-s * logp[p]) if p == k else out[p] * out[k // p]
    return out


def _em_attempt(s: mp.mpc, n: int, bits: int, max_terms: int):
    sigma = s.real
    eps = mp.ldexp(mp.mpf(1), -bits)
    n = _round_n(n)
    powers = _inverse_powers(s, n, bits)
    total = mp.fsum(powers[1:n])
    n_pow = powers[n]  # N^{-s}
    head = n * n_pow / (s - 1)
    total += head + n_pow / 2
    # rounding: each k^{-s} is a product of <= log2 N factors
    # k^{-s} carries relative error ~ (|t| log k + log2 k) eps from the phase
    sig = float(sigma)
    magnitude = sum(k ** -sig for k in range(1, n + 1)) + float(abs(head))
    rounding = mp.mpf(magnitude) * (abs(float(s.imag)) * math.log(n) + math.log2(n) + 8) * eps
    bern = _bernoulli_table(max_terms + 1, bits)
    rising = s
    fact = mp.mpf(2)
    npow = n_pow / n
    inv_n2 = mp.mpf(1) / (n * n)
    sc = complex(s)
    log2_target = float(mp.log(eps * abs(total), 2))
    # float shadow of log2 |first omitted term|, used to decide when to check
    shadow = 1.0 + math.log2(abs(sc)) - float(sigma + 1) * math.log2(n) - 2 * math.log2(2 * math.pi)
    l2 = 2 * math.log2(2 * math.pi * n)
    best = mp.inf
    k = 0
    for k in range(1, max_terms + 1):
        total += bern[k - 1] / fact * rising * npow
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        fact = fact * (2 * k + 1) * (2 * k + 2)
        npow *= inv_n2
        if rising == 0:
            # non-positive integer s: every later term vanishes
            return total, mp.mpf(0), rounding, EulerMaclaurinPlan(n, k, 0.0)
        shadow += math.log2(abs(sc + 2 * k - 1) * abs(sc + 2 * k)) - l2
        if sigma + 2 * k + 1 <= 0 or shadow > log2_target + 8:
            continue
        # remainder <= |first omitted term| * |s+2k+1| / (sigma+2k+1)
        nxt = abs(bern[k]) / fact * abs(rising) * abs(npow)
        rem = nxt * abs(s + 2 * k + 1) / (sigma + 2 * k + 1)
        if rem < eps * abs(total):
            return total, rem, rounding, EulerMaclaurinPlan(n, k, float(rem))
        if rem > best:
            break
        best = rem
    return None, best, rounding, EulerMaclaurinPlan(n, k, float(best))


def _round_n(n: int) -> int:
    return max(6, int(n))


def _zeta_em(s: mp.mpc, bits: int) -> tuple[mp.mpc, mp.mpf, EulerMaclaurinPlan]:
    n = plan_zeta(s, bits).cutoff_n
    for _ in range(12):
        total, rem, rounding, plan = _em_attempt(s, n, bits, max_terms=bits // 2 + 16)
        if total is not None:
            return total, rem + rounding, plan
        n = int(n * 1.4) + 2
    raise ArithmeticError(f"Euler-Maclaurin failed to converge at s={s}")


def zeta_with_plan(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[ComplexValue, EulerMaclaurinPlan]:
    s = as_value(s)
    with ctx.workprec(16):
        z = s.value
        if z == 1:
            raise PoleError("s=1", "zeta pole at s=1")
        extra = 8 + int(math.log2(2 + abs(float(z.imag)) * 8))
        with mp.workprec(ctx.bits + 16 + extra):
            value, err, plan = _zeta_em(mp.mpc(z), ctx.bits + extra)
        if s.err_bound:
            # crude |zeta'| bound: log N times the direct-sum magnitude
            err += s.err_bound * (mp.log(plan.cutoff_n) + 1) * (abs(value) + plan.cutoff_n)
        err += 8 * abs(value) * ctx.ulp
        return ComplexValue(+value.real, +value.imag, err), plan


def zeta(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ComplexValue:
    """Riemann zeta(s) by Euler--Maclaurin summation."""
    return zeta_with_plan(s, ctx)[0]
