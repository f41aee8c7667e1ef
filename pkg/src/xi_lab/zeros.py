"""Sign-change zeros of Re F_alpha(t) and Im F_alpha(t) on finite t-windows.

Values are normalized by |pi^{-s/2} Gamma(s/2)| before sign tests.  This
removes the e^{-pi t/4} decay without changing signs, so one absolute
``degenerate_floor`` works for the whole window.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Iterable, Iterator

import mpmath as mp

from .completed import LinePoint, F_line
from .numerics import DEFAULT_CONTEXT, PrecisionContext, XiLabError, fmt, parse
from .special import T_MAX_SUPPORTED, log_gamma_raw

PARTS = ("re", "im")
METHODS = ("bisection", "secant-polished")
SCHEMA_VERSION = 1
DEDUP_TOL = mp.mpf(10) ** -10


class DegenerateLineError(XiLabError):
    """Every sample of the requested part is below the degenerate floor."""

    def __init__(self, alpha, part):
        super().__init__(f"{part} F_alpha vanishes identically on alpha={fmt(alpha, 6)} (degenerate line)")
        self.alpha = alpha
        self.part = part


class LostBracketError(XiLabError):
    """A bracket whose end-point signs no longer differ, even at raised precision."""


class StoreError(XiLabError):
    """Malformed or unwritable zero store."""


@dataclass(frozen=True)
class ScanPolicy:
    t_lo: float = 0.05
    t_hi: float = 100.0
    initial_step: float = 0.25
    refinement_tol: float = 1e-20
    degenerate_floor: float = 1e-20
    max_halvings: int = 6

    def __post_init__(self) -> None:
        if not 0 < self.initial_step <= 0.5:
            raise ValueError("initial_step must lie in (0, 0.5]")
        if not 0 <= self.t_lo < self.t_hi:
            raise ValueError("need 0 <= t_lo < t_hi")
        if self.t_hi > T_MAX_SUPPORTED:
            raise ValueError(f"t_hi={self.t_hi} outside the supported window t <= {T_MAX_SUPPORTED:g}")
        if self.refinement_tol <= 0 or self.degenerate_floor < 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class Bracket:
    alpha: mp.mpf
    part: str
    lo: mp.mpf
    hi: mp.mpf


@dataclass(frozen=True)
class ZeroRecord:
    alpha: mp.mpf
    part: str
    bracket_lo: mp.mpf
    bracket_hi: mp.mpf
    t_star: mp.mpf
    residual: mp.mpf
    prec_bits: int
    method: str

    def __post_init__(self) -> None:
        if self.part not in PARTS:
            raise ValueError(f"part must be one of {PARTS}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        # quantize to the serialized form so that records round-trip exactly
        with mp.workprec(128):
            for name in ("alpha", "bracket_lo", "bracket_hi", "t_star", "residual"):
                object.__setattr__(self, name, parse(fmt(getattr(self, name))))
        if not self.bracket_lo < self.t_star < self.bracket_hi:
            raise ValueError("t_star must lie strictly inside the bracket")

    @property
    def key(self) -> tuple:
        return (self.alpha, self.part, self.t_star)

    def to_json(self) -> str:
        row = {"v": SCHEMA_VERSION}
        for k, v in asdict(self).items():
            row[k] = v if isinstance(v, (int, str)) else fmt(v)
        return json.dumps(row, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ZeroRecord":
        row = json.loads(line)
        if row.pop("v", None) != SCHEMA_VERSION:
            raise ValueError("unsupported schema version")
        with mp.workprec(128):
            return cls(
                alpha=parse(row["alpha"]), part=row["part"],
                bracket_lo=parse(row["bracket_lo"]), bracket_hi=parse(row["bracket_hi"]),
                t_star=parse(row["t_star"]), residual=parse(row["residual"]),
                prec_bits=int(row["prec_bits"]), method=row["method"],
            )


# ---------------------------------------------------------------------------
# Normalized values


def gamma_factor_abs(alpha, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mp.mpf:
    """|pi^{-s/2} Gamma(s/2)| at s = 1/2 + alpha + i t."""
    with ctx.workprec():
        s = LinePoint(alpha, t).s
        lg, _ = log_gamma_raw(s / 2, ctx.bits)
        return mp.exp(lg.real - s.real / 2 * mp.log(mp.pi))


def part_value(alpha, part: str, t, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple[mp.mpf, mp.mpf]:
    """(value, err_bound) of part(F_alpha(t)) divided by |pi^{-s/2} Gamma(s/2)|."""
    if part not in PARTS:
        raise ValueError(f"part must be one of {PARTS}")
    with ctx.workprec():
        F = F_line(LinePoint(alpha, t), ctx)
        scale = gamma_factor_abs(alpha, t, ctx)
        v = F.re if part == "re" else F.im
        return v / scale, F.err_bound / scale * (1 + 4 * ctx.ulp)


def _sign(v, err) -> int:
    if abs(v) <= err:
        return 0
    return 1 if v > 0 else -1


# ---------------------------------------------------------------------------
# Scan and refine


def scan(alpha, part: str, policy: ScanPolicy = ScanPolicy(), ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[Bracket]:
    """Sign-change brackets of part(F_alpha) on [t_lo, t_hi].

    Panels touching a sample below ``degenerate_floor`` are resampled at half
    the step (up to ``max_halvings`` times) so that near-tangential pairs are
    not stepped over.
    """
    if part not in PARTS:
        raise ValueError(f"part must be one of {PARTS}")
    with ctx.workprec():
        a = mp.mpf(alpha)
        lo, hi = mp.mpf(policy.t_lo), mp.mpf(policy.t_hi)
        count = int(mp.ceil((hi - lo) / mp.mpf(policy.initial_step)))
        ts = [lo + (hi - lo) * k / count for k in range(count + 1)]
        vals = [part_value(a, part, t, ctx) for t in ts]
        floor = mp.mpf(policy.degenerate_floor)
        if all(abs(v) < floor for v, _ in vals):
            raise DegenerateLineError(a, part)
        out: list[Bracket] = []
        for k in range(count):
            out.extend(_panel(a, part, ts[k], vals[k], ts[k + 1], vals[k + 1], floor, policy.max_halvings, ctx))
        return out


def _panel(a, part, t0, v0, t1, v1, floor, depth, ctx) -> list[Bracket]:
    small = abs(v0[0]) < floor or abs(v1[0]) < floor
    if small and depth > 0:
        tm = (t0 + t1) / 2
        vm = part_value(a, part, tm, ctx)
        return (_panel(a, part, t0, v0, tm, vm, floor, depth - 1, ctx)
                + _panel(a, part, tm, vm, t1, v1, floor, depth - 1, ctx))
    s0, s1 = _sign(*v0), _sign(*v1)
    if s0 * s1 < 0:
        return [Bracket(a, part, t0, t1)]
    return []


def refine(bracket: Bracket, tol=None, ctx: PrecisionContext = DEFAULT_CONTEXT, _escalated: bool = False) -> ZeroRecord:
    """Shrink a bracket to width <= tol, then polish t_star by a secant step.

    Bisection is used until the bracket is narrower than 1e-6; Illinois
    (modified regula falsi) steps take over from there.  If an end-point sign
    becomes unresolvable the refinement restarts once at doubled precision.
    """
    tol = mp.mpf(tol if tol is not None else ScanPolicy.refinement_tol)
    try:
        with ctx.workprec():
            return _refine(bracket, tol, ctx)
    except LostBracketError:
        if _escalated:
            raise
        return refine(bracket, tol, ctx.doubled(), _escalated=True)


def _refine(bracket: Bracket, tol, ctx: PrecisionContext) -> ZeroRecord:
    a, part = bracket.alpha, bracket.part
    lo, hi = mp.mpf(bracket.lo), mp.mpf(bracket.hi)
    vlo, elo = part_value(a, part, lo, ctx)
    vhi, ehi = part_value(a, part, hi, ctx)
    slo, shi = _sign(vlo, elo), _sign(vhi, ehi)
    if slo * shi >= 0:
        raise LostBracketError(f"no sign change on [{fmt(lo, 12)}, {fmt(hi, 12)}]")
    switch = mp.mpf(10) ** -6
    side = 0
    method = "bisection"
    exact = None
    for _ in range(400):
        width = hi - lo
        if width <= tol:
            break
        if width > switch:
            t = (lo + hi) / 2
        else:
            t = lo - vlo * width / (vhi - vlo)
            # keep strictly inside, and fall back to bisection if the step stalls
            if not lo < t < hi:
                t = (lo + hi) / 2
            method = "secant-polished"
        v, e = part_value(a, part, t, ctx)
        s = _sign(v, e)
        if s == 0:
            # |value| within its own error bound: t is a zero to working accuracy
            exact = t
            break
        if s == slo:
            lo, vlo = t, v
            if side == -1 and width <= switch:
                vhi /= 2
            side = -1
        else:
            hi, vhi = t, v
            if side == 1 and width <= switch:
                vlo /= 2
            side = 1
    else:
        raise LostBracketError("refinement did not converge")
    if exact is not None:
        t_star = exact
    else:
        # final secant estimate inside the last bracket (vlo, vhi may be Illinois-scaled)
        vlo_t, _ = part_value(a, part, lo, ctx)
        vhi_t, _ = part_value(a, part, hi, ctx)
        t_star = lo - vlo_t * (hi - lo) / (vhi_t - vlo_t)
        if not lo < t_star < hi:
            t_star = (lo + hi) / 2
        else:
            method = "secant-polished"
    # reported bracket is padded so that quantization to 30 digits keeps it valid
    pad = max(tol, abs(t_star) * mp.mpf(10) ** -28)
    lo_r, hi_r = t_star - pad, t_star + pad
    if _sign(*part_value(a, part, lo_r, ctx)) * _sign(*part_value(a, part, hi_r, ctx)) >= 0:
        lo_r, hi_r = lo, hi
    residual = abs(part_value(a, part, t_star, ctx)[0])
    return ZeroRecord(a, part, lo_r, hi_r, t_star, residual, ctx.working_bits, method)


def revalidate(record: ZeroRecord, tol=None, ctx: PrecisionContext | None = None) -> bool:
    """Sign change across the bracket and residual below tol, at twice the record's precision."""
    tol = mp.mpf(tol if tol is not None else ScanPolicy.refinement_tol)
    ctx = ctx or PrecisionContext(2 * record.prec_bits)
    with ctx.workprec():
        s_lo = _sign(*part_value(record.alpha, record.part, record.bracket_lo, ctx))
        s_hi = _sign(*part_value(record.alpha, record.part, record.bracket_hi, ctx))
        res = abs(part_value(record.alpha, record.part, record.t_star, ctx)[0])
        return s_lo * s_hi < 0 and res < tol


def find_zeros(alpha, part: str, policy: ScanPolicy = ScanPolicy(), ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[ZeroRecord]:
    return [refine(b, policy.refinement_tol, ctx) for b in scan(alpha, part, policy, ctx)]


def count_zeros(alpha, part: str, T, ctx: PrecisionContext = DEFAULT_CONTEXT, policy: ScanPolicy | None = None) -> int:
    """Number of refined sign-change zeros on (t_lo, T]; 0 on a degenerate line."""
    policy = policy or ScanPolicy()
    # a fixed grid anchored at t_lo keeps counts monotone in T
    step = mp.mpf(policy.initial_step)
    n = int(mp.ceil((mp.mpf(T) - policy.t_lo) / step))
    grid_hi = float(policy.t_lo + n * step)
    pol = ScanPolicy(policy.t_lo, grid_hi, policy.initial_step, policy.refinement_tol,
                     policy.degenerate_floor, policy.max_halvings)
    try:
        zeros = find_zeros(alpha, part, pol, ctx)
    except DegenerateLineError:
        return 0
    return sum(1 for z in zeros if z.t_star <= T)


def _scan_shard(args):
    alpha, part, policy, bits = args
    ctx = PrecisionContext(bits)
    try:
        return find_zeros(alpha, part, policy, ctx)
    except DegenerateLineError:
        return None


def find_zeros_parallel(alpha, part: str, policy: ScanPolicy = ScanPolicy(),
                        ctx: PrecisionContext = DEFAULT_CONTEXT, workers: int = 1) -> list[ZeroRecord]:
    """``find_zeros`` with the window split into grid-aligned shards across processes."""
    if workers <= 1:
        return find_zeros(alpha, part, policy, ctx)
    from concurrent.futures import ProcessPoolExecutor

    step = policy.initial_step
    cells = int(mp.ceil((policy.t_hi - policy.t_lo) / step))
    per = max(1, -(-cells // workers))
    shards = []
    for k in range(0, cells, per):
        lo = policy.t_lo + k * step
        hi = min(policy.t_hi, policy.t_lo + (k + per) * step)
        shards.append((alpha, part, ScanPolicy(lo, hi, step, policy.refinement_tol,
                                               policy.degenerate_floor, policy.max_halvings), ctx.working_bits))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_scan_shard, shards))
    if all(r is None for r in results):
        raise DegenerateLineError(mp.mpf(alpha), part)
    merged: list[ZeroRecord] = []
    for r in results:
        for z in r or ():
            if not merged or abs(z.t_star - merged[-1].t_star) > DEDUP_TOL:
                merged.append(z)
    return merged


# ---------------------------------------------------------------------------
# Store


def default_store_path() -> Path:
    return Path(os.environ.get("XI_LAB_STORE", "xi_lab_zeros.jsonl"))


def read_store(path: Path | str) -> list[ZeroRecord]:
    path = Path(path)
    if not path.exists():
        return []
    out = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(ZeroRecord.from_json(line))
            except (ValueError, KeyError, TypeError) as exc:
                raise StoreError(f"{path}: malformed record on line {lineno}: {exc}") from None
    return out


def _sort_key(r: ZeroRecord):
    return (r.alpha, r.part, r.t_star)


def _is_duplicate(r: ZeroRecord, existing: Iterable[ZeroRecord]) -> bool:
    return any(e.alpha == r.alpha and e.part == r.part and abs(e.t_star - r.t_star) <= DEDUP_TOL for e in existing)


def write_store(path: Path | str, records: Iterable[ZeroRecord]) -> int:
    """Merge records into the store; returns how many were new.

    New records are appended when they sort after every stored record;
    otherwise the file is rewritten in canonical order through an atomic
    replace.
    """
    path = Path(path)
    existing = read_store(path)
    by_line: dict = {}
    for e in existing:
        by_line.setdefault((e.alpha, e.part), []).append(e)
    new = []
    for r in records:
        bucket = by_line.setdefault((r.alpha, r.part), [])
        if not _is_duplicate(r, bucket):
            bucket.append(r)
            new.append(r)
    if not new:
        if not path.exists():
            _atomic_write(path, [])
        return 0
    new.sort(key=_sort_key)
    try:
        if existing and _sort_key(new[0]) > _sort_key(max(existing, key=_sort_key)):
            with path.open("a") as fh:
                fh.writelines(r.to_json() + "\n" for r in new)
        else:
            _atomic_write(path, sorted(existing + new, key=_sort_key))
    except OSError as exc:
        raise StoreError(f"cannot write store {path}: {exc}") from None
    return len(new)


def _atomic_write(path: Path, records: list[ZeroRecord]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.writelines(r.to_json() + "\n" for r in records)
        os.replace(tmp, path)
    except OSError as exc:
        raise StoreError(f"cannot write store {path}: {exc}") from None


def iter_lines(records: Iterable[ZeroRecord]) -> Iterator[tuple[tuple, list[ZeroRecord]]]:
    """Group records by (alpha, part) in canonical order."""
    groups: dict = {}
    for r in sorted(records, key=_sort_key):
        groups.setdefault((r.alpha, r.part), []).append(r)
    yield from groups.items()
