"""Zero curves of Re and Im of sinh(z^2), a closed-form model for the split
of zeros into real-part and imaginary-part families.

With z = x + iy,

    sinh(z^2) = sinh(x^2 - y^2) cos(2xy) + i cosh(x^2 - y^2) sin(2xy).

Re vanishes on y = +-x and on the hyperbolas xy = pi/4 + pi n/2; Im vanishes
on xy = pi n/2.  The two hyperbola families never meet, so every zero of
sinh(z^2) lies on the diagonals, at x = +-y = sqrt(pi n / 2).

Double precision is enough throughout: each check is exact by construction up
to rounding of the parametrization.
"""
from __future__ import annotations

import cmath
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import Iterable

KINDS = ("line_diag", "line_antidiag", "re_hyperbola", "im_hyperbola")
EPS = sys.float_info.epsilon


@dataclass(frozen=True, order=True)
class CurveDescriptor:
    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "im_hyperbola" and self.n < 1:
            raise ValueError("im_hyperbola(0) degenerates to the axes")
        if self.n < 0:
            raise ValueError("n must be >= 0")

    @property
    def part(self) -> str:
        return "im" if self.kind == "im_hyperbola" else "re"

    @property
    def quarter_pi_multiple(self) -> int | None:
        """k with xy = k pi/4 on a hyperbola (odd for re, even for im); None for lines."""
        if self.kind == "re_hyperbola":
            return 2 * self.n + 1
        if self.kind == "im_hyperbola":
            return 2 * self.n
        return None

    @property
    def product(self) -> float | None:
        k = self.quarter_pi_multiple
        return None if k is None else k * math.pi / 4

    def label(self) -> str:
        return self.kind if self.product is None else f"{self.kind}({self.n})"


@dataclass(frozen=True)
class Box:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self) -> None:
        if not (0 < self.x_lo < self.x_hi and 0 < self.y_lo < self.y_hi):
            raise ValueError("box must lie in the open first quadrant with lo < hi")

    @classmethod
    def square(cls, lo: float, hi: float) -> "Box":
        return cls(lo, hi, lo, hi)


def curves_in_box(box: Box) -> list[CurveDescriptor]:
    """Every zero curve of Re or Im sinh(z^2) that meets the box.

    xy is continuous on the box with range [x_lo y_lo, x_hi y_hi], so a
    hyperbola xy = c meets the box exactly when c lies in that range.
    """
    out = []
    if max(box.x_lo, box.y_lo) <= min(box.x_hi, box.y_hi):
        out.append(CurveDescriptor("line_diag"))
    p_lo, p_hi = box.x_lo * box.y_lo, box.x_hi * box.y_hi
    k_max = int(4 * p_hi / math.pi) + 1
    for k in range(1, k_max + 1):
        c = k * math.pi / 4
        if p_lo <= c <= p_hi:
            out.append(CurveDescriptor("re_hyperbola", (k - 1) // 2) if k % 2
                       else CurveDescriptor("im_hyperbola", k // 2))
    return out


def sample_curve(c: CurveDescriptor, box: Box, points: int = 50) -> list[tuple[float, float]]:
    """Evenly spaced points in x along the part of ``c`` inside the box."""
    if c.kind == "line_antidiag":
        raise ValueError("y = -x does not meet the first quadrant")
    if c.kind == "line_diag":
        lo, hi = max(box.x_lo, box.y_lo), min(box.x_hi, box.y_hi)
        f = lambda x: x
    else:
        p = c.product
        lo, hi = max(box.x_lo, p / box.y_hi), min(box.x_hi, p / box.y_lo)
        f = lambda x: p / x
    if lo > hi:
        return []
    if points == 1 or lo == hi:
        return [(lo, f(lo))]
    return [(x, f(x)) for x in (lo + (hi - lo) * i / (points - 1) for i in range(points))]


def residual_on_curve(c: CurveDescriptor, point: tuple[float, float]) -> float:
    """|Re sinh(z^2)| on re-curves, |Im sinh(z^2)| on im-curves."""
    x, y = point
    v = cmath.sinh(complex(x, y) ** 2)
    return abs(v.real) if c.part == "re" else abs(v.imag)


def eval_err_bound(point: tuple[float, float]) -> float:
    """Rounding bound for sinh(z^2) in double precision near ``point``.

    Rounding z^2 perturbs the argument by about eps (x^2 + y^2); sinh' = cosh
    is bounded by cosh(x^2 - y^2) on the line Re w = x^2 - y^2.
    """
    x, y = point
    return 8 * EPS * (1 + x * x + y * y) * math.cosh(x * x - y * y)


def true_zeros_in_box(box: Box) -> list[tuple[float, float]]:
    """Zeros of sinh(z^2) in the box: x = y = sqrt(pi n / 2), n >= 1."""
    out = []
    n = 1
    while True:
        r = math.sqrt(math.pi * n / 2)
        if r > min(box.x_hi, box.y_hi):
            break
        if r >= max(box.x_lo, box.y_lo):
            out.append((r, r))
        n += 1
    return out


def hyperbola_families_disjoint(box: Box) -> bool:
    """No re-hyperbola meets an im-hyperbola inside the box.

    Distinct hyperbolas xy = c1, xy = c2 never meet; re constants are odd
    multiples of pi/4 and im constants even ones, so no two coincide.
    """
    curves = [c for c in curves_in_box(box) if c.product is not None]
    re_k = {c.quarter_pi_multiple for c in curves if c.part == "re"}
    im_k = {c.quarter_pi_multiple for c in curves if c.part == "im"}
    return not (re_k & im_k)


def crossing_count_formula(x0: float, Y: float) -> int:
    return math.floor(2 * x0 * Y / math.pi)


def vertical_crossings(x0: float, Y: float) -> int:
    """Im-curve crossings of {x0} x (0, Y], counted from the descriptors."""
    box = Box(x0 / 2, x0 * 2, min(1e-9, Y / 2), Y)
    return sum(1 for c in curves_in_box(box)
               if c.kind == "im_hyperbola" and c.product / x0 <= Y)


def vertical_sign_changes(x0: float, Y: float, per_gap: int = 16) -> int:
    """Sign changes of Im sinh((x0 + iy)^2) for y in (0, Y], sampled densely.

    cosh(x0^2 - y^2) > 0, so the sign is that of sin(2 x0 y); using it avoids
    overflow of cosh for large y.
    """
    gap = math.pi / (2 * x0)
    steps = max(1, math.ceil(Y / gap * per_gap))
    count = 0
    prev = None
    for i in range(1, steps + 1):
        y = Y * i / steps
        s = math.copysign(1.0, math.sin(2 * x0 * y))
        if prev is not None and s != prev:
            count += 1
        prev = s
    return count


def polylines_csv(box: Box, points: int = 50, curves: Iterable[CurveDescriptor] | None = None) -> str:
    """Curve polylines as CSV rows: kind, n, part, x, y."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "n", "part", "x", "y"])
    for c in curves if curves is not None else curves_in_box(box):
        for x, y in sample_curve(c, box, points):
            w.writerow([c.kind, c.n, c.part, repr(x), repr(y)])
    return buf.getvalue()
