"""Deterministic JSON reports, delimited tables and figure rendering.

Report files are canonical JSON (sorted keys, fixed separators, trailing
newline) so identical configurations produce byte-identical output; wall
clock and memory telemetry go to stderr, never into the report.  The
optional figures directory receives a CSV table and a PNG chart next to the
JSON output.
"""

from __future__ import annotations

import csv
import json
import resource
import sys
import time
from fractions import Fraction
from pathlib import Path


def canonical_json(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n").encode()


def emit(report: dict, out: str | None) -> None:
    data = canonical_json(report)
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)


class Telemetry:
    def __init__(self):
        self.t0 = time.monotonic()

    def dump(self) -> None:
        dt = time.monotonic() - self.t0
        rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        print(f"[qshuf] wall={dt:.2f}s maxrss={rss}kB", file=sys.stderr)


def frac_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def key_str(n) -> str:
    return ",".join(str(x) for x in n)


# -- figures -------------------------------------------------------------------


def _mpl():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_dims_figures(report: dict, figdir: str) -> list[str]:
    out = Path(figdir)
    out.mkdir(parents=True, exist_ok=True)
    created = []
    rows = sorted(report["dims"].items())
    csv_path = out / "dims.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "dim", "method"])
        for n, d in rows:
            w.writerow([n, d, report.get("methods", {}).get(n, "")])
    created.append(str(csv_path))

    plt = _mpl()
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(rows)), 3.2))
    ax.bar(range(len(rows)), [d for _, d in rows], color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([n for n, _ in rows], rotation=60, fontsize=7)
    ax.set_ylabel("dim")
    ax.set_title(f"graded dimensions at slope {','.join(report['slope'])}")
    fig.tight_layout()
    png_path = out / "dims.png"
    fig.savefig(png_path, dpi=130)
    plt.close(fig)
    created.append(str(png_path))
    return created


def render_conjecture_figures(report: dict, figdir: str) -> list[str]:
    out = Path(figdir)
    out.mkdir(parents=True, exist_ok=True)
    created = []
    rows = report["rows"]
    csv_path = out / "check_conjecture.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "lhs_dim", "rhs_exp_kac", "equal"])
        for row in rows:
            w.writerow([key_str(row["n"]), row["lhs"], row["rhs"], row["equal"]])
    created.append(str(csv_path))

    plt = _mpl()
    labels = [key_str(r["n"]) for r in rows]
    lhs = [r["lhs"] for r in rows]
    rhs = [r["rhs"] for r in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(4.5, 0.6 * len(rows)), 3.4))
    ax.bar([i - 0.2 for i in x], lhs, width=0.4, label="dim (wheel kernels)", color="#4878a8")
    ax.bar([i + 0.2 for i in x], rhs, width=0.4, label="Exp of Kac series", color="#c46d3b")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=60, fontsize=7)
    ax.set_yscale("log" if max(lhs + rhs + [1]) > 50 else "linear")
    ax.legend(fontsize=8)
    ax.set_title("dimension conjecture: both sides")
    fig.tight_layout()
    png_path = out / "check_conjecture.png"
    fig.savefig(png_path, dpi=130)
    plt.close(fig)
    created.append(str(png_path))
    return created


def render_kac_figures(report: dict, figdir: str) -> list[str]:
    out = Path(figdir)
    out.mkdir(parents=True, exist_ok=True)
    created = []
    coeffs = report["poly"]
    csv_path = out / "kac.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t_power", "coefficient"])
        for d, c in enumerate(coeffs):
            w.writerow([d, c])
    created.append(str(csv_path))

    plt = _mpl()
    fig, ax = plt.subplots(figsize=(4.2, 3))
    ax.bar(range(len(coeffs)), coeffs, color="#4878a8")
    ax.set_xlabel("power of t")
    ax.set_ylabel("coefficient")
    ax.set_title(f"Kac polynomial at n = {key_str(report['n'])}")
    fig.tight_layout()
    png_path = out / "kac.png"
    fig.savefig(png_path, dpi=130)
    plt.close(fig)
    created.append(str(png_path))
    return created
