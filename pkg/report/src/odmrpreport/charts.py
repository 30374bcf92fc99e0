"""Charts over sweep CSVs: metric means versus speed, one line per attacker count.

Input is the simulator's sweep CSV (one row per run). Every plotted point is
a plain mean over the seeds of one (senders, receivers, attackers, max_speed)
cell, with a standard-error bar; nothing is smoothed or interpolated.
"""

import csv
import html
import math
import statistics
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

METRICS = ("pdr", "avg_delay_ms")

METRIC_LABELS = {
    "pdr": "packet delivery ratio",
    "avg_delay_ms": "average end-to-end delay (ms)",
}

REQUIRED_COLUMNS = (
    "senders", "receivers", "attackers", "max_speed_mps", "seed",
    "pdr", "avg_delay_ms",
)


class ReportError(ValueError):
    pass


class MissingCellsError(ReportError):
    """The CSV lacks rows for cells the requested chart needs."""

    def __init__(self, cells):
        self.cells = sorted(cells)
        listing = ", ".join(str(c) for c in self.cells)
        super().__init__(
            f"missing cells (senders, receivers, attackers, max_speed): {listing}")


@dataclass(frozen=True)
class FigureSpec:
    metric: str
    senders: int
    receivers: int

    def validate(self):
        if self.metric not in METRICS:
            raise ReportError(f"unknown metric {self.metric!r}; "
                              f"expected one of {METRICS}")
        return self


def load_rows(csv_path):
    """Typed rows from a sweep CSV; rejects files missing contract columns."""
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ReportError(f"{csv_path}: missing columns {missing}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            try:
                rows.append({
                    "senders": int(rec["senders"]),
                    "receivers": int(rec["receivers"]),
                    "attackers": int(rec["attackers"]),
                    "max_speed": float(rec["max_speed_mps"]),
                    "pdr": float(rec["pdr"]),
                    "avg_delay_ms": float(rec["avg_delay_ms"]),
                })
            except (KeyError, ValueError) as e:
                raise ReportError(f"{csv_path} line {lineno}: bad row: {e}") from e
    if not rows:
        raise ReportError(f"{csv_path}: no data rows")
    return rows


def _mean_stderr(values):
    clean = [v for v in values if not math.isnan(v)]
    if not clean:
        return math.nan, 0.0
    mean = statistics.fmean(clean)
    if len(clean) < 2:
        return mean, 0.0
    return mean, statistics.stdev(clean) / math.sqrt(len(clean))


def aggregate(rows, spec):
    """Per-attacker series for one (senders, receivers) slice.

    Returns {attackers: (speeds, means, stderrs)} with speeds ascending.
    The expected cell grid is the cross product of the attacker and speed
    values present anywhere in the CSV; absent cells are an error rather
    than a silently shorter line.
    """
    spec.validate()
    attacker_axis = sorted({r["attackers"] for r in rows})
    speed_axis = sorted({r["max_speed"] for r in rows})
    cells = {}
    for r in rows:
        if r["senders"] == spec.senders and r["receivers"] == spec.receivers:
            cells.setdefault((r["attackers"], r["max_speed"]), []).append(
                r[spec.metric])
    missing = [(spec.senders, spec.receivers, a, v)
               for a in attacker_axis for v in speed_axis
               if (a, v) not in cells]
    if missing:
        raise MissingCellsError(missing)
    series = {}
    for a in attacker_axis:
        stats = [_mean_stderr(cells[(a, v)]) for v in speed_axis]
        series[a] = (list(speed_axis),
                     [m for m, _ in stats],
                     [e for _, e in stats])
    return series


def chart_name(metric, senders, receivers):
    """Base file name; a pure function of the chart coordinates."""
    return f"{metric}_s{senders}_r{receivers}"


def _draw(series, spec):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for a in sorted(series):
        speeds, means, errs = series[a]
        ax.errorbar(speeds, means, yerr=errs, marker="o", capsize=3,
                    label=f"{a} attacker{'s' if a != 1 else ''}")
    ax.set_xlabel("max speed (m/s)")
    ax.set_ylabel(METRIC_LABELS[spec.metric])
    ax.set_title(f"{spec.senders} sender{'s' if spec.senders != 1 else ''}, "
                 f"{spec.receivers} receivers")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def render(csv_path, spec, out_path):
    """Write one chart for `spec` to out_path; returns the plotted series."""
    series = aggregate(load_rows(csv_path), spec)
    fig = _draw(series, spec)
    fig.savefig(out_path)
    plt.close(fig)
    return series


def report_all(csv_path, out_dir, senders=None, receivers=None, metric=None):
    """Chart grid over every (senders, receivers) pair in the CSV.

    Each chart is written as both PNG and SVG, plus an index.html linking
    them. Optional filters narrow the grid. Returns the written paths.
    """
    rows = load_rows(csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pairs = sorted({(r["senders"], r["receivers"]) for r in rows})
    if senders is not None:
        pairs = [p for p in pairs if p[0] in senders]
    if receivers is not None:
        pairs = [p for p in pairs if p[1] in receivers]
    metrics = METRICS if metric is None else (metric,)
    if not pairs:
        raise ReportError("filters match no (senders, receivers) pair in the CSV")

    written = []
    entries = []
    for m in metrics:
        for s, r in pairs:
            spec = FigureSpec(m, s, r)
            series = aggregate(rows, spec)
            fig = _draw(series, spec)
            base = chart_name(m, s, r)
            for suffix in (".png", ".svg"):
                path = out_dir / (base + suffix)
                fig.savefig(path)
                written.append(path)
            plt.close(fig)
            entries.append((m, s, r, base))

    index = out_dir / "index.html"
    with open(index, "w", encoding="utf-8") as fh:
        fh.write("<!DOCTYPE html>\n<html><head><meta charset='utf-8'>"
                 "<title>sweep charts</title></head><body>\n")
        for m, s, r, base in entries:
            caption = f"{METRIC_LABELS[m]}, senders={s}, receivers={r}"
            fh.write(f"<figure><img src='{base}.png' alt='{html.escape(caption)}'>"
                     f"<figcaption>{html.escape(caption)} "
                     f"(<a href='{base}.svg'>svg</a>)</figcaption></figure>\n")
        fh.write("</body></html>\n")
    written.append(index)
    return written
