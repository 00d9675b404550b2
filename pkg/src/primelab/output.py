"""CSV and SVG writers for aligned ``SumSeries`` sets.

Both writers go through a temporary file in the destination directory and an
``os.replace``, so a reader never sees a half-written file.
"""

from __future__ import annotations

import contextlib
import csv
import io
import math
import os
import tempfile
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .exceptions import PrimelabError
from .series import SumSeries

SIG_DIGITS = 12


class UsageError(PrimelabError):
    """Caller violated a precondition of an output format."""


def format_number(v) -> str:
    if isinstance(v, int):
        return str(v)
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return format(float(v), f".{SIG_DIGITS}g")


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a sibling temp file and rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".primelab-", dir=directory)
    except OSError as exc:
        raise OSError(f"{path}: cannot create temporary file: {exc.strerror}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def _check_aligned(series: Sequence[SumSeries]) -> list:
    if not series:
        return []
    xs = series[0].xs
    for s in series[1:]:
        if s.xs != xs:
            raise UsageError(f"series {s.label!r} is not aligned with {series[0].label!r}")
    return xs


def csv_text(
    series: Sequence[SumSeries], comments: Iterable[str] = (), x_label: str = "x"
) -> str:
    """Render aligned series as CSV: ``#`` comment lines, header, one row per x."""
    xs = _check_aligned(series)
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([x_label] + [s.label for s in series])
    for i, x in enumerate(xs):
        writer.writerow([format_number(x)] + [format_number(s.points[i][1]) for s in series])
    return buf.getvalue()


def emit_csv(
    series: Sequence[SumSeries],
    path: str | os.PathLike,
    comments: Iterable[str] = (),
    x_label: str = "x",
) -> None:
    atomic_write(path, csv_text(series, comments, x_label))


def text_table(series: Sequence[SumSeries], x_label: str = "x") -> str:
    """Whitespace-aligned table for terminals."""
    xs = _check_aligned(series)
    rows = [[x_label] + [s.label for s in series]]
    for i, x in enumerate(xs):
        rows.append([format_number(x)] + [format_number(s.points[i][1]) for s in series])
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + "\n" for row in rows
    )


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")
WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 170, 30, 50


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


class _Axes:
    """Maps data coordinates into the SVG plot rectangle."""

    def __init__(self, series: Sequence[SumSeries], log_x: bool):
        xs = [float(x) for s in series for x in s.xs]
        ys = [v for s in series for v in s.values]
        if log_x and min(xs) <= 0:
            raise UsageError("log-x axis needs every x > 0")
        self.log_x = log_x
        self.x0, self.x1 = self._tx(min(xs)), self._tx(max(xs))
        self.y0, self.y1 = min(ys), max(ys)
        if self.y1 == self.y0:
            pad = abs(self.y0) * 0.05 or 1.0
            self.y0 -= pad
            self.y1 += pad
        if self.x1 == self.x0:
            self.x0 -= 1.0
            self.x1 += 1.0
        self.left, self.right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
        self.top, self.bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def _tx(self, x: float) -> float:
        return math.log10(x) if self.log_x else float(x)

    def px(self, x: float) -> float:
        return self.left + (self._tx(x) - self.x0) / (self.x1 - self.x0) * (self.right - self.left)

    def py(self, y: float) -> float:
        return self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)


def svg_text(
    series: Sequence[SumSeries], log_x: bool = False, title: str = "", x_label: str = "x"
) -> str:
    """Static SVG line chart, one polyline per series, legend from labels."""
    if not series:
        raise UsageError("an SVG plot needs at least one series")
    for s in series:
        if len(s) < 2:
            raise UsageError(f"series {s.label!r} has {len(s)} point(s); an SVG plot needs >= 2")
    ax = _Axes(series, log_x)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
        out.append(f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle">{escape(title)}</text>')
    out.append(
        f'<rect x="{ax.left}" y="{ax.top}" width="{ax.right - ax.left}" '
        f'height="{ax.bottom - ax.top}" fill="none" stroke="black"/>'
    )
    for ty in _nice_ticks(ax.y0, ax.y1):
        y = ax.py(ty)
        out.append(f'<line x1="{ax.left - 4}" y1="{y:.2f}" x2="{ax.left}" y2="{y:.2f}" stroke="black"/>')
        out.append(
            f'<text x="{ax.left - 6}" y="{y + 4:.2f}" text-anchor="end">{format(ty, ".4g")}</text>'
        )
    for tx in _nice_ticks(ax.x0, ax.x1):
        x = ax.left + (tx - ax.x0) / (ax.x1 - ax.x0) * (ax.right - ax.left)
        shown = 10**tx if log_x else tx
        out.append(f'<line x1="{x:.2f}" y1="{ax.bottom}" x2="{x:.2f}" y2="{ax.bottom + 4}" stroke="black"/>')
        out.append(
            f'<text x="{x:.2f}" y="{ax.bottom + 18}" text-anchor="middle">{format(shown, ".4g")}</text>'
        )
    axis_name = f"{x_label} (log scale)" if log_x else x_label
    out.append(
        f'<text x="{(ax.left + ax.right) / 2:.1f}" y="{HEIGHT - 8}" text-anchor="middle">'
        f"{escape(axis_name)}</text>"
    )
    for k, s in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{ax.px(x):.2f},{ax.py(v):.2f}" for x, v in s.points)
        out.append(
            f'<polyline data-label="{escape(s.label)}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{pts}"/>'
        )
        ly = ax.top + 10 + 18 * k
        out.append(
            f'<line x1="{ax.right + 12}" y1="{ly}" x2="{ax.right + 36}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{ax.right + 42}" y="{ly + 4}">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(
    series: Sequence[SumSeries],
    path: str | os.PathLike,
    log_x: bool = False,
    title: str = "",
    x_label: str = "x",
) -> None:
    atomic_write(path, svg_text(series, log_x, title, x_label))
