"""Result files: ``results.csv``, ``manifest.txt`` and a log-scale ``plot.svg``.

Every file is written to a temporary sibling first and moved into place, so a
rerun into the same directory replaces outputs atomically.
"""
import csv
import io
import math
import os
import tempfile
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["format_value", "emit_outputs", "render_svg", "OutputError"]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


class OutputError(OSError):
    pass


def format_value(v):
    """Integers verbatim; floats in positional notation with 9 significant digits."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if not math.isfinite(v):
        return str(v)
    if v == 0.0:
        return "0"
    decimals = max(0, 8 - math.floor(math.log10(abs(v))))
    return f"{v:.{decimals}f}"


def _csv_text(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _atomic_write(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _ticks_log(lo, hi):
    a, b = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
    if a == b:
        b = a + 1
    return a, b


def render_svg(columns, rows, title="", width=720, height=440):
    """Line chart of every column against the first one, log-scale y axis.

    Non-positive values cannot be drawn on a log axis and are skipped.
    """
    left, right, top, bottom = 80, 190, 40, 60
    pw, ph = width - left - right, height - top - bottom
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{left + pw / 2}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')

    xs = [float(r[0]) for r in rows]
    ys = [float(v) for r in rows for v in r[1:] if float(v) > 0 and math.isfinite(float(v))]
    if xs and ys:
        x0, x1 = min(xs), max(xs)
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        a, b = _ticks_log(min(ys), max(ys))

        def sx(x):
            return left + (x - x0) / (x1 - x0) * pw

        def sy(y):
            return top + ph - (math.log10(y) - a) / (b - a) * ph

        for e in range(a, b + 1):
            y = sy(10.0 ** e)
            out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" '
                       f'stroke="#dddddd"/>')
            out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">1e{e}</text>')
        for x in sorted(set(xs)):
            out.append(f'<text x="{sx(x):.2f}" y="{top + ph + 18}" text-anchor="middle">'
                       f'{escape(format_value(x).rstrip("0").rstrip("."))}</text>')

        for i, name in enumerate(columns[1:]):
            color = PALETTE[i % len(PALETTE)]
            pts = [(sx(float(r[0])), sy(float(r[i + 1]))) for r in rows
                   if float(r[i + 1]) > 0 and math.isfinite(float(r[i + 1]))]
            if not pts:
                continue
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            for x, y in pts:
                out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="{color}"/>')
            ly = top + 14 + 18 * i
            out.append(f'<line x1="{left + pw + 12}" y1="{ly - 4}" x2="{left + pw + 32}" '
                       f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{left + pw + 38}" y="{ly}">{escape(name)}</text>')

    if columns:
        out.append(f'<text x="{left + pw / 2}" y="{height - 18}" text-anchor="middle">'
                   f'{escape(columns[0])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_outputs(columns, rows, manifest, output_dir, extra_tables=None, title=""):
    """Write the result files into ``output_dir`` (created if missing).

    ``manifest`` is a mapping rendered as ``key = value`` lines.
    ``extra_tables`` maps file names to ``(columns, rows)`` for side tables.
    Returns the list of written paths.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        target = out / "results.csv"
        _atomic_write(target, _csv_text(columns, rows))
        written.append(target)
        for name, (cols, rws) in (extra_tables or {}).items():
            target = out / name
            _atomic_write(target, _csv_text(cols, rws))
            written.append(target)
        target = out / "manifest.txt"
        _atomic_write(target, "".join(f"{k} = {v}\n" for k, v in manifest.items()))
        written.append(target)
        target = out / "plot.svg"
        _atomic_write(target, render_svg(columns, rows, title))
        written.append(target)
    except OSError as exc:
        raise OutputError(f"cannot write outputs to {out}: {exc.strerror or exc}") from exc
    return written
