"""Report emission: delimited output plus rendered figures.

The CSV is the canonical interchange format and is byte-stable across
reruns of the same configuration: float fields use shortest round-trip
repr and the volatile runtime_ms field is kept out of it (it stays in the
JSON export).  Figures render to SVG with a fixed hash salt and no date
metadata, so they are byte-stable too.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from pathlib import Path

from .errors import InsufficientData
from .metrics import HeuristicReport, MetricsRecord

CSV_COLUMNS = [
    "graph_id", "family", "n", "perturbation", "p", "seed", "restarts",
    "f_star", "maxcut", "ar", "aut_order_base", "aut_order_pert",
    "mu_base", "mu_pert", "i_prime", "i_sym", "i_sym_prime", "error",
]

_FLOAT_COLUMNS = {"f_star", "ar", "mu_base", "mu_pert", "i_prime", "i_sym", "i_sym_prime"}
_INT_COLUMNS = {"n", "p", "seed", "restarts", "maxcut", "aut_order_base", "aut_order_pert"}

SVG_NAMES = (
    "i_prime_vs_p.svg",
    "symmetry_indices.svg",
    "i_prime_by_perturbation.svg",
    "aut_orders.svg",
)


def records_to_csv_text(records: list[MetricsRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = []
        for col in CSV_COLUMNS:
            val = getattr(r, col)
            row.append(repr(float(val)) if col in _FLOAT_COLUMNS else str(val))
        writer.writerow(row)
    return buf.getvalue()


def records_from_csv_text(text: str) -> list[MetricsRecord]:
    reader = csv.DictReader(io.StringIO(text))
    records = []
    for row in reader:
        kw = {}
        for col in CSV_COLUMNS:
            raw = row[col]
            if col in _FLOAT_COLUMNS:
                kw[col] = float(raw)
            elif col in _INT_COLUMNS:
                kw[col] = int(raw)
            else:
                kw[col] = raw
        records.append(MetricsRecord(runtime_ms=0.0, **kw))
    return records


def emit_report(records: list[MetricsRecord], fmt: str, path) -> list[Path]:
    """Write records in the requested format and return the file paths.

    fmt="csv" or "json" writes a single file; fmt="svg-plots" renders the
    four standard figures into the directory `path`.
    """
    if not records:
        raise InsufficientData("no records to report")
    path = Path(path)
    if fmt == "csv":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(records_to_csv_text(records))
        return [path]
    if fmt == "json":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps([asdict(r) for r in records], indent=1))
        return [path]
    if fmt == "svg-plots":
        return render_plots(records, path)
    raise ValueError(f"unknown report format {fmt!r}")


def write_heuristics(report: HeuristicReport, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(asdict(report), indent=1, default=str))
    return path


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------

def _setup_matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "cutlab"
    plt.rcParams["figure.max_open_warning"] = 0
    return plt

def _clean(records):
    return [r for r in records if not r.error and not math.isnan(r.ar)]


_PERT_ORDER = ("shadow1", "shadow2", "pendant", "delete")


def render_plots(records: list[MetricsRecord], outdir) -> list[Path]:
    """Render the four standard SVG figures: the quotient metric versus
    layer count per graph, both symmetry indices per graph, the quotient by
    perturbation, and the automorphism counts."""
    rows = _clean(records)
    if not rows:
        raise InsufficientData("no usable records to plot")
    plt = _setup_matplotlib()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    graph_ids = sorted({r.graph_id for r in rows})
    written = []

    def save(fig, name):
        target = outdir / name
        fig.savefig(target, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(target)

    # 1: quotient I' against p, one panel per graph, one line per perturbation
    ncols = 4
    nrows = max(1, (len(graph_ids) + ncols - 1) // ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3 * nrows), squeeze=False)
    for ax in axes.flat:
        ax.set_visible(False)
    for idx, gid in enumerate(graph_ids):
        ax = axes[idx // ncols][idx % ncols]
        ax.set_visible(True)
        for kind in _PERT_ORDER:
            pts = sorted(
                {(r.p, r.i_prime) for r in rows if r.graph_id == gid and r.perturbation == kind}
            )
            if pts:
                ax.plot([p for p, _ in pts], [v for _, v in pts], marker="o", label=kind)
        ax.axhline(1.0, color="gray", lw=0.6, ls=":")
        ax.set_title(gid, fontsize=9)
        ax.set_xlabel("p")
        ax.set_ylabel("I'")
    axes[0][0].legend(fontsize=7)
    fig.tight_layout()
    save(fig, SVG_NAMES[0])

    # 2: I_sym and I'_sym per graph, grouped by perturbation
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(max(8, 0.8 * len(graph_ids) * 4), 7), sharex=True)
    x = range(len(graph_ids))
    width = 0.2
    for off, kind in enumerate(_PERT_ORDER):
        sym, sym_p = [], []
        for gid in graph_ids:
            cell = [r for r in rows if r.graph_id == gid and r.perturbation == kind]
            sym.append(cell[0].i_sym if cell else float("nan"))
            vals = sorted({r.i_sym_prime for r in cell if not math.isnan(r.i_sym_prime)})
            sym_p.append(math.fsum(vals) / len(vals) if vals else float("nan"))
        pos = [i + (off - 1.5) * width for i in x]
        ax1.bar(pos, sym, width, label=kind)
        ax2.bar(pos, sym_p, width, label=kind)
    ax1.set_ylabel("symmetry index")
    ax2.set_ylabel("approximate symmetry index")
    ax2.set_xticks(list(x))
    ax2.set_xticklabels(graph_ids, rotation=45, ha="right", fontsize=8)
    ax1.legend(fontsize=8)
    fig.tight_layout()
    save(fig, SVG_NAMES[1])

    # 3: quotient I' per graph grouped by perturbation (mean across p)
    fig, ax = plt.subplots(figsize=(max(8, 0.8 * len(graph_ids) * 4), 4))
    for off, kind in enumerate(_PERT_ORDER):
        vals = []
        for gid in graph_ids:
            cell = sorted({r.i_prime for r in rows if r.graph_id == gid and r.perturbation == kind})
            vals.append(math.fsum(cell) / len(cell) if cell else float("nan"))
        ax.bar([i + (off - 1.5) * width for i in x], vals, width, label=kind)
    ax.axhline(1.0, color="gray", lw=0.6, ls=":")
    ax.set_ylabel("I' (mean over p)")
    ax.set_xticks(list(x))
    ax.set_xticklabels(graph_ids, rotation=45, ha="right", fontsize=8)
    ax.legend(fontsize=8)
    fig.tight_layout()
    save(fig, SVG_NAMES[2])

    # 4: automorphism counts per graph and perturbation (log scale)
    fig, ax = plt.subplots(figsize=(max(8, 0.8 * len(graph_ids) * 4), 4))
    base_vals = []
    for gid in graph_ids:
        cell = [r for r in rows if r.graph_id == gid]
        base_vals.append(cell[0].aut_order_base if cell else float("nan"))
    ax.bar([i - 2 * width for i in x], base_vals, width, label="base")
    for off, kind in enumerate(_PERT_ORDER):
        vals = []
        for gid in graph_ids:
            cell = [r for r in rows if r.graph_id == gid and r.perturbation == kind]
            vals.append(cell[0].aut_order_pert if cell else float("nan"))
        ax.bar([i + (off - 1) * width for i in x], vals, width, label=kind)
    ax.set_yscale("log")
    ax.set_ylabel("|Aut|")
    ax.set_xticks(list(x))
    ax.set_xticklabels(graph_ids, rotation=45, ha="right", fontsize=8)
    ax.legend(fontsize=8)
    fig.tight_layout()
    save(fig, SVG_NAMES[3])

    return written
