"""
SVG pictures of curves, dual subdivisions, patchworks and amoeba overlays.

Scenes are built exactly (Fractions, clipped to a viewport) and only
converted to floats when matplotlib draws them.
"""

import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import matplotlib
matplotlib.use("Agg")  # Use non-interactive backend
import matplotlib.pyplot as plt

from tropica.config import (
    BASE_STROKE,
    FIGURE_SIZE,
    LABEL_MIN_WEIGHT,
    MIN_VIEW_SPAN,
    RAY_CLIP_PADDING,
    SVG_HASHSALT,
)
from tropica.utils.curves import TropicalCurve
from tropica.utils.errors import EmptyViewport, MalformedInput
from tropica.utils.geometry import Piece, Point
from tropica.utils.patchwork import RealTropicalCurve, quadrant_drawing
from tropica.utils.subdivision import DualSubdivision

logger = logging.getLogger(__name__)

Box = Tuple[Fraction, Fraction, Fraction, Fraction]

COLORS = {"curve": "black", "dual": "steelblue", "axis": "gray", "amoeba": "darkorange"}


@dataclass(frozen=True)
class RenderSpec:
    viewport: Optional[Box] = None       # (x0, y0, x1, y1); None picks one from the scene
    padding: Fraction = RAY_CLIP_PADDING
    base_stroke: float = BASE_STROKE
    label_weights: bool = True
    output: Optional[str] = None

    def __post_init__(self):
        if self.padding < 0:
            raise MalformedInput(f"padding must be >= 0, got {self.padding}")
        if self.viewport is not None:
            check_viewport(self.viewport)


@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point
    weight: int = 1
    style: str = "curve"


@dataclass(frozen=True)
class Label:
    at: Point
    text: str


@dataclass
class Scene:
    viewport: Box
    segments: List[Segment] = field(default_factory=list)
    dots: List[Point] = field(default_factory=list)
    labels: List[Label] = field(default_factory=list)
    scatter: list = field(default_factory=list)     # float pairs, amoeba samples
    title: str = ""


def check_viewport(box) -> Box:
    x0, y0, x1, y1 = (Fraction(c) for c in box)
    if not (x1 > x0 and y1 > y0):
        raise EmptyViewport(f"viewport {box} has zero area", viewport=[str(c) for c in box])
    return x0, y0, x1, y1


def padded_box(points, padding: Fraction) -> Box:
    """Bounding box of points, widened to MIN_VIEW_SPAN and then by `padding` of its span on every side."""
    if not points:
        raise EmptyViewport("nothing to draw and no explicit viewport")
    xs, ys = [Fraction(p[0]) for p in points], [Fraction(p[1]) for p in points]
    box = []
    for lo, hi in ((min(xs), max(xs)), (min(ys), max(ys))):
        grow = max(MIN_VIEW_SPAN - (hi - lo), 0) / 2
        lo, hi = lo - grow, hi + grow
        pad = (hi - lo) * padding
        box.append((lo - pad, hi + pad))
    return box[0][0], box[1][0], box[0][1], box[1][1]


def clip_piece(piece: Piece, box: Box) -> Optional[Tuple[Point, Point]]:
    """The part of an edge, ray or line inside box, or None."""
    lo, hi = piece.lo, piece.hi
    for axis, (a, b) in enumerate(((box[0], box[2]), (box[1], box[3]))):
        d, p = piece.direction[axis], piece.base[axis]
        if d == 0:
            if not a <= p <= b:
                return None
            continue
        s1, s2 = sorted(((a - p) / d, (b - p) / d))
        lo = s1 if lo is None else max(lo, s1)
        hi = s2 if hi is None else min(hi, s2)
    if lo > hi:
        return None
    return piece.at(lo), piece.at(hi)


def _midpoint(p, q) -> Point:
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


# --- scene builders ---

def curve_scene(C: TropicalCurve, spec: RenderSpec = RenderSpec()) -> Scene:
    box = spec.viewport
    if box is None:
        bb = C.bounding_box()
        box = padded_box([] if bb is None else [bb[:2], bb[2:]], spec.padding)
    scene = Scene(box, title="tropical curve")
    for _, piece in C.pieces():
        clipped = clip_piece(piece, box)
        if clipped is None:
            continue
        scene.segments.append(Segment(*clipped, weight=piece.weight))
        if spec.label_weights and piece.weight >= LABEL_MIN_WEIGHT:
            scene.labels.append(Label(_midpoint(*clipped), str(piece.weight)))
    scene.dots.extend(C.vertices)
    return scene


def subdivision_scene(S: DualSubdivision, spec: RenderSpec = RenderSpec()) -> Scene:
    """Cells of the dual subdivision over the integer points of the Newton polygon's bounding box."""
    box = spec.viewport or padded_box(S.newton_polygon, spec.padding)
    scene = Scene(box, title="dual subdivision")
    index = S.edge_index()
    seen = set()
    for cell in S.cells:
        for u, v in cell.directed_edges():
            key = tuple(sorted((u, v)))
            if key in seen:
                continue
            seen.add(key)
            weight = S.edges[index[key]].weight if key in index else 1
            scene.segments.append(Segment(key[0], key[1], weight=weight, style="dual"))
    xs, ys = [p[0] for p in S.newton_polygon], [p[1] for p in S.newton_polygon]
    scene.dots.extend((i, j) for i in range(min(xs), max(xs) + 1) for j in range(min(ys), max(ys) + 1))
    return scene


def patchwork_scene(R: RealTropicalCurve, spec: RenderSpec = RenderSpec()) -> Scene:
    """The four reflected copies with the coordinate axes; gluing points are dots."""
    drawing = quadrant_drawing(R)
    points = [p for path in drawing.values() for p in path]
    if spec.viewport:
        box = spec.viewport
    else:
        reach = max([abs(c) for p in points for c in p], default=Fraction(1))
        box = (-reach, -reach, reach, reach)
    scene = Scene(box, title="patchwork")
    scene.segments.append(Segment((box[0], Fraction(0)), (box[2], Fraction(0)), style="axis"))
    scene.segments.append(Segment((Fraction(0), box[1]), (Fraction(0), box[3]), style="axis"))
    for copy, path in sorted(drawing.items()):
        for p, q in zip(path, path[1:]):
            scene.segments.append(Segment(p, q))
    scene.dots.extend(sorted({drawing[one][-1] for one, _ in R.gluings}))
    return scene


def amoeba_scene(points, curve: TropicalCurve, window: Box, spec: RenderSpec = RenderSpec()) -> Scene:
    """Amoeba samples scattered over the tropical curve clipped to the sampling window."""
    box = spec.viewport or tuple(Fraction(c).limit_denominator(10 ** 6) for c in window)
    box = check_viewport(box)
    scene = curve_scene(curve, RenderSpec(box, spec.padding, spec.base_stroke, spec.label_weights))
    scene.title = "amoeba"
    scene.scatter = [(float(a), float(b)) for a, b in points]
    return scene


# --- drawing ---

def _f(x) -> float:
    return round(float(x), 6)


def render_svg(scene: Scene, spec: RenderSpec = RenderSpec()) -> str:
    """
    Draw a scene with matplotlib and return the SVG text. Output is
    byte-identical for identical scenes (fixed hash salt, no date stamp).
    """
    x0, y0, x1, y1 = check_viewport(scene.viewport)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASHSALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=FIGURE_SIZE)
        try:
            for seg in scene.segments:
                ax.plot([_f(seg.start[0]), _f(seg.end[0])], [_f(seg.start[1]), _f(seg.end[1])],
                        color=COLORS[seg.style], linewidth=spec.base_stroke * seg.weight,
                        linestyle="--" if seg.style == "axis" else "-", solid_capstyle="round")
            if scene.scatter:
                ax.scatter([p[0] for p in scene.scatter], [p[1] for p in scene.scatter],
                           s=2, color=COLORS["amoeba"], alpha=0.6)
            if scene.dots:
                ax.scatter([_f(p[0]) for p in scene.dots], [_f(p[1]) for p in scene.dots],
                           s=12, color="black", zorder=3)
            for label in scene.labels:
                ax.text(_f(label.at[0]), _f(label.at[1]), label.text, fontsize=11, fontweight="bold",
                        ha="left", va="bottom")
            ax.set_xlim(_f(x0), _f(x1))
            ax.set_ylim(_f(y0), _f(y1))
            ax.set_aspect("equal")
            ax.grid(alpha=0.3, linestyle="--")
            if scene.title:
                ax.set_title(scene.title, fontsize=12, fontweight="bold")
            buf = io.StringIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    svg = buf.getvalue()
    if spec.output:
        with open(spec.output, "w", encoding="utf-8") as f:
            f.write(svg)
        logger.info("✓ SVG written: %s (%d segments)", spec.output, len(scene.segments))
    return svg
