"""SVG drawings of instances and solutions, and the stats plot.

Output is byte-stable: the SVG writer gets a fixed hash salt, no date
metadata, and text is kept as text rather than glyph paths.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Optional

import matplotlib

matplotlib.use("Agg")
from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

_RC = {"svg.hashsalt": "brf", "svg.fonttype": "none", "path.simplify": False}


@dataclass
class Scene:
    """Everything drawn, in raw coordinates."""

    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    minimal: list = field(default_factory=list)  # (x1, y1, x2, y2)
    independent: list = field(default_factory=list)
    hitting: list = field(default_factory=list)
    region: list = field(default_factory=list)

    def bounds(self):
        xs = [p[0] for p in self.a + self.b] + [r[0] for r in self.region] + [r[2] for r in self.region]
        ys = [p[1] for p in self.a + self.b] + [r[1] for r in self.region] + [r[3] for r in self.region]
        if not xs:
            return (0.0, 1.0, 0.0, 1.0)
        x0, x1, y0, y1 = float(min(xs)), float(max(xs)), float(min(ys)), float(max(ys))
        px = max(x1 - x0, 1.0) * 0.06
        py = max(y1 - y0, 1.0) * 0.06
        return (x0 - px, x1 + px, y0 - py, y1 + py)


def _raw_box(inst, r):
    (x1, y1), (x2, y2) = inst.raw_a[r.a_idx], inst.raw_b[r.b_idx]
    return (x1, y1, x2, y2)


def build_scene(inst, sol=None) -> Scene:
    sc = Scene(a=list(inst.raw_a), b=list(inst.raw_b))
    if not inst.z.is_full:
        sc.region = [tuple(r) for r in inst.z.rects]
    if sol is not None:
        sc.minimal = [_raw_box(inst, r) for r in sol.minimal.rects]
        sc.independent = [_raw_box(inst, r) for r in sol.independent]
        sc.hitting = sorted(inst.to_raw(p) for p in sol.hitting)
    return sc


def _box(r, **kw):
    x1, y1, x2, y2 = (float(v) for v in r)
    return Rectangle((x1, y1), x2 - x1, y2 - y1, **kw)


def render_svg(inst, sol=None, title: Optional[str] = None) -> str:
    """A points as open circles, B points filled, minimal rectangles faint,
    the independent set translucent, hitting points as crosses."""
    sc = build_scene(inst, sol)
    with rc_context(_RC):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot()
        for r in sc.region:
            ax.add_patch(_box(r, facecolor="#f3f3f3", edgecolor="none", zorder=0))
        for r in sc.minimal:
            ax.add_patch(_box(r, fill=False, edgecolor="#999999", linewidth=0.5, alpha=0.6, zorder=1))
        for r in sc.independent:
            ax.add_patch(_box(r, facecolor="#3b7dd8", edgecolor="#1d4f99", alpha=0.35,
                              linewidth=1.0, zorder=2))
        if sc.a:
            ax.scatter([float(p[0]) for p in sc.a], [float(p[1]) for p in sc.a], s=28,
                       facecolors="white", edgecolors="black", linewidths=1.0, zorder=3, label="A")
        if sc.b:
            ax.scatter([float(p[0]) for p in sc.b], [float(p[1]) for p in sc.b], s=28,
                       color="#555555", zorder=3, label="B")
        if sc.hitting:
            ax.scatter([float(p[0]) for p in sc.hitting], [float(p[1]) for p in sc.hitting],
                       marker="x", s=46, color="#c0392b", linewidths=1.6, zorder=4, label="hitting")
        x0, x1, y0, y1 = sc.bounds()
        ax.set_xlim(x0, x1)
        ax.set_ylim(y0, y1)
        ax.set_aspect("equal", adjustable="box")
        if title:
            ax.set_title(title)
        if sc.a or sc.b:
            ax.legend(loc="upper left", fontsize=7, frameon=False)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def plot_stats(rows, path: str) -> None:
    """Plot ``|K|/n`` and ``|K|`` against the bound, per instance size.

    ``rows`` are dicts with the keys written by the ``stats`` command.
    """
    sizes = sorted({r["size"] for r in rows})
    by = {s: [r for r in rows if r["size"] == s] for s in sizes}
    mean = lambda xs: sum(xs) / len(xs)  # noqa: E731
    ratio = [mean([r["ratio"] for r in by[s]]) for s in sizes]
    worst = [max(r["ratio"] for r in by[s]) for s in sizes]
    k = [mean([r["cfi"] for r in by[s]]) for s in sizes]
    bound = [mean([r["bound"] for r in by[s]]) for s in sizes]
    with rc_context(_RC):
        fig = Figure(figsize=(9, 3.6))
        ax1, ax2 = fig.subplots(1, 2)
        ax1.plot(sizes, ratio, marker="o", label="mean |K|/n")
        ax1.plot(sizes, worst, marker="^", linestyle="--", label="max |K|/n")
        ax1.set_xlabel("n")
        ax1.set_ylabel("|K| / n")
        ax1.legend(fontsize=8)
        ax2.plot(sizes, k, marker="o", label="mean |K|")
        ax2.plot(sizes, bound, marker="s", linestyle="--", label="mean bound")
        ax2.set_xlabel("n")
        ax2.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
