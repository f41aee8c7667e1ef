"""Batch command line: eval, theta, verify, scan, report, sinh-map.

Exit codes: 0 success, 1 when ``verify`` has a failing row, 2 on pole,
domain, configuration or store errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import mpmath as mp

from . import hardy, sinh_analogy, zeros
from .completed import LinePoint, F_line
from .numerics import PrecisionContext, XiLabError, fmt
from .report import build_report, identity_row, load_rows, rows_to_csv, rows_to_json
from .special import ALPHA_MAX_SUPPORTED, T_MAX_SUPPORTED
from .theta import ThetaArg, check_arc, theta_w, theta_w_deriv


class ConfigError(XiLabError):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    t_window: tuple = (0.05, 100.0)
    alpha_list: tuple = hardy.MATRIX_ALPHAS
    b_list: tuple = hardy.MATRIX_BS
    output_dir: Path | None = None
    format: str = "csv"
    threads: int = 1

    def __post_init__(self) -> None:
        if self.threads < 1:
            raise ConfigError("--threads must be >= 1")
        if self.precision_bits < 64:
            raise ConfigError("--bits must be >= 64")
        if self.format not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")
        for a in self.alpha_list:
            if abs(a) > ALPHA_MAX_SUPPORTED:
                raise ConfigError(f"alpha={a} outside the supported window |alpha| <= {ALPHA_MAX_SUPPORTED:g}")
        for b in self.b_list:
            check_arc(b)
        lo, hi = self.t_window
        if not 0 <= lo < hi <= T_MAX_SUPPORTED:
            raise ConfigError(f"t window must satisfy 0 <= t_min < t_max <= {T_MAX_SUPPORTED:g}")

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision_bits)


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: Path | None, name: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)


# ---------------------------------------------------------------------------


def _decimal(text: str) -> str:
    """Decimal strings are parsed later at the working precision, not as binary floats."""
    try:
        with mp.workdps(60):
            mp.mpf(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected a decimal number, got {text!r}") from None
    return text


def cmd_eval(args) -> int:
    ctx = PrecisionContext(args.bits)
    with ctx.workprec():
        v = F_line(LinePoint(mp.mpf(args.alpha), mp.mpf(args.t)), ctx)
    print(json.dumps({"alpha": fmt(args.alpha), "t": fmt(args.t), "bits": args.bits,
                      "re": fmt(v.re), "im": fmt(v.im), "err_bound": fmt(v.err_bound, 6)}, sort_keys=True))
    return 0


def cmd_theta(args) -> int:
    ctx = PrecisionContext(args.bits)
    if (args.x is None) == (args.b is None):
        raise ConfigError("give exactly one of --x or --b")
    if args.x is not None:
        if args.deriv:
            raise ConfigError("--deriv needs --b")
        with ctx.workprec():
            v = theta_w(ThetaArg.real(mp.mpf(args.x)), ctx)
        where = {"x": fmt(args.x)}
    else:
        v = theta_w_deriv(args.b, args.deriv, ctx)
        where = {"b": fmt(args.b), "deriv": args.deriv}
    print(json.dumps({**where, "bits": args.bits, "re": fmt(v.re), "im": fmt(v.im),
                      "err_bound": fmt(v.err_bound, 6)}, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    cfg = RunConfig(precision_bits=args.bits, alpha_list=args.alpha or hardy.MATRIX_ALPHAS,
                    b_list=args.b or hardy.MATRIX_BS, output_dir=args.out, format=args.format,
                    threads=args.threads)
    specs = hardy.identity_matrix(cfg.alpha_list, cfg.b_list, args.m or hardy.MATRIX_MS,
                                  tuple(args.weight) if args.weight else hardy.MATRIX_WEIGHTS)
    reports = hardy.run_matrix(specs, cfg.ctx, workers=cfg.threads, tol=args.tol)
    rows = [identity_row(r, args.timings) for r in reports]
    text = rows_to_json(rows) if cfg.format == "json" else rows_to_csv(rows)
    _emit(text, cfg.output_dir, f"verify.{cfg.format}")
    failed = sum(1 for r in rows if not r["pass"])
    summary = f"{len(rows) - failed} pass / {failed} fail"
    print(summary, file=sys.stdout if cfg.output_dir else sys.stderr)
    return 1 if failed else 0


def cmd_scan(args) -> int:
    cfg = RunConfig(precision_bits=args.bits, t_window=(args.t_min, args.t_max),
                    alpha_list=args.alpha or (0.0,), b_list=(), threads=args.threads)
    store = args.store or zeros.default_store_path()
    policy = zeros.ScanPolicy(t_lo=cfg.t_window[0], t_hi=cfg.t_window[1], initial_step=args.step)
    parts = zeros.PARTS if args.part == "both" else (args.part,)
    zeros.read_store(store)  # fail early on a malformed store
    for alpha in cfg.alpha_list:
        for part in parts:
            try:
                found = zeros.find_zeros_parallel(alpha, part, policy, cfg.ctx, workers=cfg.threads)
            except zeros.DegenerateLineError as exc:
                print(f"alpha={fmt(alpha, 8)} part={part}: {exc}; 0 records")
                continue
            valid = [z for z in found if zeros.revalidate(z, policy.refinement_tol)]
            new = zeros.write_store(store, valid)
            rejected = len(found) - len(valid)
            print(f"alpha={fmt(alpha, 8)} part={part} found={len(found)} new={new}"
                  + (f" rejected={rejected}" if rejected else ""))
    return 0


def cmd_report(args) -> int:
    store = args.store or zeros.default_store_path()
    records = zeros.read_store(store)
    out = args.out or Path("report")
    verify_file = args.verify
    if verify_file is None:
        for name in ("verify.json", "verify.csv"):
            if (out / name).exists():
                verify_file = out / name
                break
    rows = load_rows(verify_file) if verify_file else None
    for p in build_report(records, rows, out):
        print(p)
    return 0


def cmd_sinh_map(args) -> int:
    box = sinh_analogy.Box(*args.box)
    _emit(sinh_analogy.polylines_csv(box, args.points), args.out, "sinh_curves.csv")
    curves = sinh_analogy.curves_in_box(box)
    worst = max((sinh_analogy.residual_on_curve(c, p) - sinh_analogy.eval_err_bound(p)
                 for c in curves for p in sinh_analogy.sample_curve(c, box, args.points)), default=0.0)
    summary = {
        "curves": len(curves),
        "true_zeros": len(sinh_analogy.true_zeros_in_box(box)),
        "families_disjoint": sinh_analogy.hyperbola_families_disjoint(box),
        "residuals_within_bound": worst <= 0,
    }
    print(json.dumps(summary, sort_keys=True), file=sys.stdout if args.out else sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xi-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def bits(sp):
        sp.add_argument("--bits", type=int, default=128, help="working precision in bits")

    e = sub.add_parser("eval", help="evaluate F_alpha(t)")
    e.add_argument("--alpha", type=_decimal, required=True)
    e.add_argument("--t", type=_decimal, required=True)
    bits(e)
    e.set_defaults(func=cmd_eval)

    th = sub.add_parser("theta", help="evaluate w(x) or d^k/db^k w(e^{ib})")
    th.add_argument("--x", type=_decimal)
    th.add_argument("--b", type=float)
    th.add_argument("--deriv", type=int, default=0)
    bits(th)
    th.set_defaults(func=cmd_theta)

    v = sub.add_parser("verify", help="run the identity matrix")
    v.add_argument("--alpha", type=_floats, help="comma-separated alphas")
    v.add_argument("--b", type=_floats, help="comma-separated arc parameters")
    v.add_argument("--m", type=_ints, help="comma-separated derivative orders")
    v.add_argument("--weight", action="append", choices=hardy.WEIGHTS)
    v.add_argument("--tol", type=float, default=hardy.DEFAULT_TOL, help="quadrature target")
    v.add_argument("--format", choices=("json", "csv"), default="csv")
    v.add_argument("--out", type=Path)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="add wall_time_ms (output no longer reproducible)")
    bits(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="find zeros and append them to the store")
    s.add_argument("--alpha", type=_floats, help="comma-separated alphas")
    s.add_argument("--part", choices=("re", "im", "both"), default="both")
    s.add_argument("--t-min", type=float, default=zeros.ScanPolicy.t_lo)
    s.add_argument("--t-max", type=float, default=zeros.ScanPolicy.t_hi)
    s.add_argument("--step", type=float, default=zeros.ScanPolicy.initial_step)
    s.add_argument("--store", type=Path, help="zero store (default $XI_LAB_STORE or xi_lab_zeros.jsonl)")
    s.add_argument("--threads", type=int, default=1)
    bits(s)
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("report", help="write the Markdown/CSV report")
    r.add_argument("--store", type=Path)
    r.add_argument("--out", type=Path)
    r.add_argument("--verify", type=Path, help="verify.json or verify.csv to summarize")
    r.set_defaults(func=cmd_report)

    m = sub.add_parser("sinh-map", help="zero-curve polylines of sinh(z^2)")
    m.add_argument("--box", type=float, nargs=4, metavar=("X0", "X1", "Y0", "Y1"), default=[0.1, 3.0, 0.1, 3.0])
    m.add_argument("--points", type=int, default=50)
    m.add_argument("--out", type=Path)
    m.set_defaults(func=cmd_sinh_map)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (XiLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
