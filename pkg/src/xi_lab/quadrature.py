"""Adaptive composite Clenshaw--Curtis quadrature at arbitrary precision.

Each panel is integrated with an (n+1)-point rule and with the embedded
(n/2+1)-point rule on every other node; ``|Q_n - Q_{n/2}|`` is used as the
(conservative) error of the accepted ``Q_n``.  Panels failing the local
tolerance are bisected.  The integrand is called with a list of nodes, so
callers can memoize expensive samples across integrals that share panels.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath as mp


class QuadratureError(ArithmeticError):
    pass


@lru_cache(maxsize=32)
def cc_rule(n: int, bits: int) -> tuple[tuple, tuple, tuple]:
    """Nodes cos(j pi / n), full weights and embedded half-rule weights on [-1, 1]."""
    if n % 4:
        raise ValueError("rule size must be a multiple of 4")
    with mp.workprec(bits):
        return (
            tuple(mp.cos(j * mp.pi / n) for j in range(n + 1)),
            _cc_weights(n),
            _cc_weights(n // 2),
        )


def _cc_weights(n: int) -> tuple:
    out = []
    half = n // 2
    for j in range(n + 1):
        c = 1 if j in (0, n) else 2
        acc = mp.mpf(1)
        for k in range(1, half + 1):
            bk = 1 if k == half else 2
            acc -= bk * mp.cos(2 * k * j * mp.pi / n) / (4 * k * k - 1)
        out.append(c * acc / n)
    return tuple(out)


@dataclass
class PanelResult:
    value: mp.mpc
    err: mp.mpf
    nodes: int
    panels: int
    abs_mass: mp.mpf  # integral of |f|, for rounding estimates


def integrate(
    f: Callable[[Sequence], Sequence],
    a,
    b,
    tol,
    *,
    n: int = 32,
    initial_panels: int = 1,
    max_panels: int = 4096,
    breakpoints: Sequence = (),
) -> PanelResult:
    """Integrate f over [a, b] to absolute tolerance ``tol`` (distributed by width)."""
    bits = mp.mp.prec
    xs, w_full, w_half = cc_rule(n, bits)
    a, b = mp.mpf(a), mp.mpf(b)
    length = b - a
    if length <= 0:
        return PanelResult(mp.mpc(0), mp.mpf(0), 0, 0, mp.mpf(0))
    edges = sorted({a, b, *(mp.mpf(p) for p in breakpoints if a < p < b)})
    stack = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        step = (hi - lo) / initial_panels
        stack.extend((lo + k * step, lo + (k + 1) * step) for k in range(initial_panels))
    stack.reverse()
    total, err, mass = mp.mpc(0), mp.mpf(0), mp.mpf(0)
    nodes = panels = 0
    tol = mp.mpf(tol)
    while stack:
        lo, hi = stack.pop()
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        ts = [mid + half * x for x in xs]
        ys = f(ts)
        nodes += len(ts)
        q_full = half * mp.fsum(w * y for w, y in zip(w_full, ys))
        q_half = half * mp.fsum(w * y for w, y in zip(w_half, ys[::2]))
        local = abs(q_full - q_half)
        if local <= tol * (hi - lo) / length or panels + len(stack) >= max_panels:
            total += q_full
            err += local
            mass += half * mp.fsum(w * abs(y) for w, y in zip(w_full, ys))
            panels += 1
        else:
            stack.append((mid, hi))
            stack.append((lo, mid))
    if panels >= max_panels and err > tol:
        raise QuadratureError(f"panel budget exhausted (err {mp.nstr(err, 3)} > tol {mp.nstr(tol, 3)})")
    return PanelResult(total, err, nodes, panels, mass)
