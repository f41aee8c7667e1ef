"""Row serialization for identity results and the Markdown/CSV run report."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import mpmath as mp

from .hardy import IdentityReport
from .numerics import fmt
from .sinh_analogy import Box, polylines_csv
from .zeros import ZeroRecord, iter_lines

ROW_FIELDS = ("alpha", "b", "x", "weight", "m", "regime", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
              "residual", "err_budget", "pass", "t_max", "printed")


def _printed_summary(report: IdentityReport) -> str:
    parts = []
    for p in report.printed:
        status = "ok" if p.consistent else ("sign-reversed" if p.consistent_negated else "FLAG")
        parts.append(f"{p.label}:{status}")
    return ";".join(parts)


def identity_row(report: IdentityReport, timings: bool = False) -> dict:
    """One IdentityReportRow; numbers as 30-digit decimal strings."""
    s = report.spec
    row = {
        "alpha": fmt(s.alpha),
        "b": "" if s.b is None else fmt(s.b),
        "x": "" if s.x is None else str(complex(s.x)),
        "weight": s.weight,
        "m": s.deriv_order,
        "regime": s.regime,
        "lhs_re": fmt(report.lhs.re),
        "lhs_im": fmt(report.lhs.im),
        "rhs_re": fmt(report.rhs.re),
        "rhs_im": fmt(report.rhs.im),
        "residual": fmt(report.residual),
        "err_budget": fmt(report.err_budget),
        "pass": report.passed,
        "t_max": fmt(report.quadrature.t_max, 8),
        "printed": _printed_summary(report),
    }
    if timings:
        row["wall_time_ms"] = f"{report.wall_time_ms:.1f}"
    return row


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    fields = list(ROW_FIELDS) + (["wall_time_ms"] if rows and "wall_time_ms" in rows[0] else [])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in r.items()})
    return buf.getvalue()


def rows_to_json(rows: Sequence[dict]) -> str:
    return json.dumps(rows, indent=1, sort_keys=True) + "\n"


def load_rows(path: Path | str) -> list[dict]:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        for r in rows:
            r["pass"] = r["pass"] == "true"
        return rows
    return json.loads(text)


# ---------------------------------------------------------------------------


def zero_count_table(records: Iterable[ZeroRecord]) -> list[dict]:
    out = []
    for (alpha, part), recs in iter_lines(records):
        out.append({
            "alpha": fmt(alpha, 8),
            "part": part,
            "zeros": len(recs),
            "t_first": fmt(recs[0].t_star, 12),
            "t_last": fmt(recs[-1].t_star, 12),
            "max_residual": fmt(max(r.residual for r in recs), 6),
        })
    return out


def residual_histogram(rows: Sequence[dict]) -> list[dict]:
    """Counts of log10(residual / err_budget) per decade, per weight."""
    bins: dict = {}
    for r in rows:
        res, bud = mp.mpf(r["residual"]), mp.mpf(r["err_budget"])
        if res == 0 or bud == 0:
            decade = "-inf"
        else:
            decade = str(int(math.floor(float(mp.log10(res / bud)))))
        key = (r["weight"], decade)
        bins[key] = bins.get(key, 0) + 1

    def order(k):
        return (k[0], -math.inf if k[1] == "-inf" else int(k[1]))

    return [{"weight": w, "log10_residual_over_budget": d, "count": bins[(w, d)]}
            for w, d in sorted(bins, key=order)]


def _csv(rows: Sequence[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _md_table(rows: Sequence[dict], fields: Sequence[str]) -> list[str]:
    lines = ["| " + " | ".join(fields) + " |", "|" + "---|" * len(fields)]
    lines += ["| " + " | ".join(str(r[f]) for f in fields) + " |" for r in rows]
    return lines


ZERO_FIELDS = ("alpha", "part", "zeros", "t_first", "t_last", "max_residual")
HIST_FIELDS = ("weight", "log10_residual_over_budget", "count")
SINH_BOX = Box.square(0.1, 3.0)


def build_report(records: Sequence[ZeroRecord], rows: Sequence[dict] | None, out_dir: Path | str) -> list[Path]:
    """Write report.md, zero_counts.csv, identity_residuals.csv and sinh_curves.csv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    zeros = zero_count_table(records)
    hist = residual_histogram(rows or [])
    flagged = sorted({p for r in rows or [] for p in r.get("printed", "").split(";")
                      if p and not p.endswith(":ok")})

    md = ["# xi-lab run report", "", "## Zero counts per line", ""]
    md += _md_table(zeros, ZERO_FIELDS)
    md += ["", "## Identity residuals", ""]
    if rows:
        passed = sum(1 for r in rows if r["pass"])
        md += [f"{passed} pass / {len(rows) - passed} fail", ""]
    md += _md_table(hist, HIST_FIELDS)
    md += ["", "## Displayed closed forms not matching the quadrature", ""]
    md += [f"- {f}" for f in flagged] or ["none"]
    md += ["", "## sinh(z^2) analogy", "",
           f"Zero-curve polylines for the box [{SINH_BOX.x_lo}, {SINH_BOX.x_hi}]^2 are in sinh_curves.csv.", ""]

    files = {
        "report.md": "\n".join(md),
        "zero_counts.csv": _csv(zeros, ZERO_FIELDS),
        "identity_residuals.csv": _csv(hist, HIST_FIELDS),
        "sinh_curves.csv": polylines_csv(SINH_BOX),
    }
    paths = []
    for name, text in files.items():
        p = out / name
        p.write_text(text)
        paths.append(p)
    return paths
