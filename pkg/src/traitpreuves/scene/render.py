"""Deterministic SVG output for evaluated scenes.

World coordinates map to a fixed-width pixel canvas; every coordinate is
printed with six decimals and elements are emitted in a fixed order, so
identical scenes give identical bytes. Points at infinity are drawn as
arrows on the viewport edge pointing in their direction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .. import moulton, theorems
from ..p2 import LineP2, PointP2, join
from . import nodes as N
from .evaluate import Circle, DrawnConic, Evaluation, InvolutionReport, MoultonReport, evaluate

WIDTH = 640
SEGMENTS = 64

STYLE = {
    "conic": 'fill="none" stroke="#1f618d" stroke-width="1.5"',
    "line": 'stroke="#7f8c8d" stroke-width="1"',
    "construction": 'stroke="#b2babb" stroke-width="1"',
    "axis": 'stroke="#c0392b" stroke-width="2" stroke-dasharray="8 4"',
    "fitted": 'stroke="#27ae60" stroke-width="2" stroke-dasharray="8 4"',
    "witness": 'fill="none" stroke="#8e44ad" stroke-width="1.5"',
    "meet": 'fill="#ffffff" stroke="#c0392b" stroke-width="1.5"',
    "point": 'fill="#000000"',
    "arrow": 'stroke="#34495e" stroke-width="1.5" marker-end="url(#arrow)"',
}


class NoRenderDirective(Exception):
    pass


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _line_label(l: LineP2) -> str:
    return "[" + ":".join(str(c) if isinstance(c, int) else _fmt(c) for c in l.coords) + "]"


class _Canvas:
    def __init__(self, viewport):
        self.xmin, self.ymin, self.xmax, self.ymax = (Fraction(v) for v in viewport)
        self.dx = self.xmax - self.xmin
        self.dy = self.ymax - self.ymin
        self.w = float(WIDTH)
        self.h = float(WIDTH * self.dy / self.dx)
        self.sx = WIDTH / self.dx
        self.sy = self.sx  # equal scales keep angles
        self.parts = []

    # -- coordinates -------------------------------------------------------

    def px(self, x, y):
        """Pixel coordinates of a finite world point (exact until the final float)."""
        if isinstance(x, float) or isinstance(y, float):
            return (x - float(self.xmin)) * float(self.sx), (float(self.ymax) - y) * float(self.sy)
        return float((x - self.xmin) * self.sx), float((self.ymax - y) * self.sy)

    def inside(self, x, y) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def clip(self, l: LineP2):
        """Endpoints (world) of the visible part of a line, or None."""
        u, v, w = l.coords
        hits = []
        if v != 0:
            for x in (self.xmin, self.xmax):
                y = -(u * x + w) / _f(v)
                if self.ymin <= y <= self.ymax:
                    hits.append((x, y))
        if u != 0:
            for y in (self.ymin, self.ymax):
                x = -(v * y + w) / _f(u)
                if self.xmin <= x <= self.xmax:
                    hits.append((x, y))
        uniq = []
        for h in hits:
            if h not in uniq:
                uniq.append(h)
        if len(uniq) < 2:
            return None
        best = max(
            ((a, b) for i, a in enumerate(uniq) for b in uniq[i + 1:]),
            key=lambda ab: (ab[0][0] - ab[1][0]) ** 2 + (ab[0][1] - ab[1][1]) ** 2,
        )
        return best

    def edge_arrow(self, direction):
        """Pixel segment ending on the viewport edge in the given world direction."""
        dx, dy = float(direction[0]) * float(self.sx), -float(direction[1]) * float(self.sy)
        n = math.hypot(dx, dy)
        dx, dy = dx / n, dy / n
        cx, cy = self.w / 2, self.h / 2
        ts = []
        if dx > 0:
            ts.append((self.w - cx) / dx)
        if dx < 0:
            ts.append(-cx / dx)
        if dy > 0:
            ts.append((self.h - cy) / dy)
        if dy < 0:
            ts.append(-cy / dy)
        t = min(ts) - 2.0
        tip = (cx + t * dx, cy + t * dy)
        tail = (tip[0] - 28 * dx, tip[1] - 28 * dy)
        return tail, tip

    # -- primitives ------------------------------------------------------

    def add(self, text: str):
        self.parts.append(text)

    def segment(self, a, b, style, attrs=""):
        (x1, y1), (x2, y2) = self.px(*a), self.px(*b)
        self.add(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"{attrs} {STYLE[style]}/>'
        )

    def full_line(self, l: LineP2, style, label=None):
        ends = self.clip(l)
        if ends is None:
            return False
        attrs = f' class="{style}" data-line="{_line_label(l)}"'
        if label:
            attrs += f' data-name="{escape(label)}"'
        self.segment(ends[0], ends[1], style, attrs)
        return True

    def polyline(self, world_points, style, cls):
        """Path through world points; None entries break the path."""
        cmds = []
        pen_up = True
        for p in world_points:
            if p is None:
                pen_up = True
                continue
            x, y = self.px(*p)
            if abs(x) > 20 * self.w or abs(y) > 20 * self.h:
                pen_up = True
                continue
            cmds.append(f"{'M' if pen_up else 'L'}{_fmt(x)} {_fmt(y)}")
            pen_up = False
        if cmds:
            self.add(f'<path class="{cls}" d="{" ".join(cmds)}" {STYLE[style]}/>')

    def dot(self, p: PointP2, label, style="point", radius=3.5):
        if p.at_infinity:
            tail, tip = self.edge_arrow(p.coords[:2])
            d = f"({_coord(p.coords[0])}:{_coord(p.coords[1])}:0)"
            self.add(
                f'<line class="infinite" x1="{_fmt(tail[0])}" y1="{_fmt(tail[1])}" '
                f'x2="{_fmt(tip[0])}" y2="{_fmt(tip[1])}" {STYLE["arrow"]}/>'
            )
            text = f"{label} {d}" if label else d
            anchor = "end" if tip[0] > tail[0] + 1e-9 else "start"
            self._text(tail[0], tail[1] + (12 if tip[1] < tail[1] else -4), text, anchor)
            return
        x, y = p.xy()
        if not self.inside(x, y):
            return
        cx, cy = self.px(x, y)
        self.add(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" {STYLE[style]}/>')
        if label:
            self._text(cx + 6, cy - 6, label)

    def _text(self, x, y, text, anchor="start"):
        extra = f' text-anchor="{anchor}"' if anchor != "start" else ""
        self.add(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}"{extra} font-family="sans-serif" font-size="13">{escape(text)}</text>'
        )


def _f(v):
    return v if isinstance(v, float) else Fraction(v)


def _coord(c) -> str:
    return str(c) if isinstance(c, int) else _fmt(c)


def _conic_points(conic, anchor: PointP2):
    """Points of a conic along the pencil of lines through a point of it.

    The line through ``anchor`` with direction angle theta meets the conic
    again at (d^T M d) anchor - 2 (anchor^T M d) d; half a turn of theta
    sweeps the whole curve.
    """
    m = [[float(x) for x in row] for row in conic.m]
    a = [float(c) for c in anchor.coords]
    out = []
    for k in range(SEGMENTS + 1):
        t = math.pi * k / SEGMENTS
        d = (math.cos(t), math.sin(t), 0.0)
        md = [sum(m[i][j] * d[j] for j in range(3)) for i in range(3)]
        dmd = sum(d[i] * md[i] for i in range(3))
        amd = sum(a[i] * md[i] for i in range(3))
        x = [dmd * a[i] - 2 * amd * d[i] for i in range(3)]
        scale = max(abs(c) for c in x)
        if scale == 0 or abs(x[2]) < 1e-9 * scale:
            out.append(None)
            continue
        out.append((x[0] / x[2], x[1] / x[2]))
    return out


def _circle_anchor(c: Circle) -> PointP2:
    cx, cy = c.center
    one = 1.0 if isinstance(c.radius, float) else 1
    return PointP2(cx + c.radius, cy, one)


def _moulton_path(canvas, l):
    if isinstance(l, moulton.Vertical):
        return [(l.c, canvas.ymin), (l.c, canvas.ymax)]
    return moulton.moulton_polyline(l, canvas.xmin, canvas.xmax)


def _draw_check(canvas, env, stmt, outcome, derived, meets):
    """Queue check-derived drawings: construction lines first, then styled extras."""
    detail = outcome.detail
    if isinstance(stmt, N.DesarguesCheck) and isinstance(detail, theorems.DesarguesVerdict):
        A, B, C, A1, B1, C1 = (env[r.name] for r in stmt.points)
        for X, Y in ((A, B), (B, C), (C, A), (A1, B1), (B1, C1), (C1, A1), (A, A1), (B, B1), (C, C1)):
            if X != Y:
                canvas.full_line(join(X, Y), "construction")
        if detail.axis is not None:
            derived.append(("line", detail.axis, "axis"))
        meets.extend(detail.side_meets)
    elif isinstance(detail, theorems.AlignmentReport):
        if detail.fitted_line is not None:
            derived.append(("line", detail.fitted_line, "fitted"))
        meets.extend(detail.meets)
    elif isinstance(detail, theorems.SectionAlignment):
        distinct = list(dict.fromkeys(detail.meets))
        if detail.aligned and len(distinct) >= 2:
            derived.append(("line", join(distinct[0], distinct[1]), "axis"))
        meets.extend(detail.meets)
    elif isinstance(detail, InvolutionReport):
        for a, b in detail.pairs:
            meets.extend((a, b))
    elif isinstance(detail, MoultonReport):
        derived.append(("moulton", detail.witness, "witness"))


def render_svg(scene: N.Scene, outcomes, directive: N.Render | None = None, evaluation: Evaluation | None = None) -> str:
    """SVG document for ``directive`` (default: the scene's first render line)."""
    if directive is None:
        if not scene.renders:
            raise NoRenderDirective("the scene has no render directive")
        directive = scene.renders[0]
    if evaluation is None:
        evaluation = evaluate(scene)
    env = evaluation.env
    canvas = _Canvas(directive.viewport)

    canvas.add('<?xml version="1.0" encoding="UTF-8"?>')
    canvas.add(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(canvas.w)}" '
        f'height="{_fmt(canvas.h)}" viewBox="0 0 {_fmt(canvas.w)} {_fmt(canvas.h)}">'
    )
    canvas.add(f"<title>{escape(directive.path)}</title>")
    canvas.add(
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
        'markerHeight="7" orient="auto"><path d="M0 0 L10 5 L0 10 z" fill="#34495e"/></marker></defs>'
    )
    canvas.add(f'<rect x="0" y="0" width="{_fmt(canvas.w)}" height="{_fmt(canvas.h)}" fill="#ffffff"/>')

    canvas.add('<g id="conics">')
    for name, value in env.items():
        if isinstance(value, Circle):
            canvas.polyline(_conic_points(value.conic, _circle_anchor(value)), "conic", "conic")
        elif isinstance(value, DrawnConic):
            canvas.polyline(_conic_points(value.conic, value.anchor), "conic", "conic")
    canvas.add("</g>")

    canvas.add('<g id="lines">')
    for name, value in env.items():
        if isinstance(value, LineP2):
            canvas.full_line(value, "line", name)
    derived, meets = [], []
    for stmt, outcome in zip(scene.checks, outcomes):
        _draw_check(canvas, env, stmt, outcome, derived, meets)
    canvas.add("</g>")

    canvas.add('<g id="derived">')
    witness_points = []
    for kind, obj, style in derived:
        if kind == "line":
            if not canvas.full_line(obj, style) and obj.coords[:2] == (0, 0):
                canvas._text(8, canvas.h - 8, f"{style} line at infinity")
        else:
            w = obj
            for pair in w.side_lines:
                for l in pair:
                    canvas.polyline(_moulton_path(canvas, l), "witness", "witness")
            for X in w.triangle1 + w.triangle2:
                canvas.polyline(_moulton_path(canvas, moulton.m_line_through(w.center, X)), "construction", "ray")
            labels = ("A", "B", "C", "A'", "B'", "C'")
            witness_points.extend(zip(w.triangle1 + w.triangle2, labels))
            witness_points.append((w.center, "O"))
            meets.extend(PointP2(m.x, m.y, 1) for m in w.side_meets)
    for m in meets:
        canvas.dot(m, None, "meet", 4.0)
    canvas.add("</g>")

    canvas.add('<g id="points">')
    for name, value in env.items():
        if isinstance(value, PointP2):
            canvas.dot(value, name)
    for p, label in witness_points:
        canvas.dot(PointP2(p.x, p.y, 1), label)
    canvas.add("</g>")
    canvas.add("</svg>")
    return "\n".join(canvas.parts) + "\n"
