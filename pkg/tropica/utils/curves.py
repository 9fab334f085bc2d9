"""
Plane tropical curves: extraction from a polynomial, reconstruction from a
dual subdivision, degree and the balancing condition.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from tropica.utils.bipoly import BiPoly
from tropica.utils.errors import MalformedInput, NonRegularSubdivision
from tropica.utils.geometry import (
    Piece,
    Point,
    Vector,
    add,
    det,
    dot,
    is_primitive,
    lattice_length,
    primitive,
    scale,
    sub,
)
from tropica.utils.subdivision import DualSubdivision, dual_subdivision

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveEdge:
    start: int
    end: int
    weight: int
    direction: Vector               # primitive, from start towards end
    dual: Optional[Tuple] = None    # lattice segment of the dual subdivision


@dataclass(frozen=True)
class CurveRay:
    base: int
    direction: Vector
    weight: int
    dual: Optional[Tuple] = None


@dataclass(frozen=True)
class CurveLine:
    """A whole line, produced only by collinear support."""
    base: Point
    direction: Vector
    weight: int
    dual: Optional[Tuple] = None


@dataclass(frozen=True)
class TropicalCurve:
    vertices: Tuple[Point, ...] = ()
    edges: Tuple[CurveEdge, ...] = ()
    rays: Tuple[CurveRay, ...] = ()
    lines: Tuple[CurveLine, ...] = ()
    vertex_cells: Tuple[int, ...] = ()
    subdivision: Optional[DualSubdivision] = field(default=None, compare=False)

    @property
    def is_empty(self) -> bool:
        return not (self.vertices or self.lines)

    def edge_length(self, k: int) -> Fraction:
        e = self.edges[k]
        d = sub(self.vertices[e.end], self.vertices[e.start])
        return Fraction(dot(d, e.direction), dot(e.direction, e.direction))

    def pieces(self) -> List[Tuple[Tuple[str, int], Piece]]:
        """Every edge, ray and line as a parametrised piece, labelled by kind and index."""
        out = []
        for k, e in enumerate(self.edges):
            piece = Piece(self.vertices[e.start], e.direction, Fraction(0), self.edge_length(k), e.weight)
            out.append((("edge", k), piece))
        for k, r in enumerate(self.rays):
            out.append((("ray", k), Piece(self.vertices[r.base], r.direction, Fraction(0), None, r.weight)))
        for k, line in enumerate(self.lines):
            out.append((("line", k), Piece(line.base, line.direction, None, None, line.weight)))
        return out

    def directions(self) -> List[Vector]:
        return [e.direction for e in self.edges] + [r.direction for r in self.rays] \
            + [line.direction for line in self.lines]

    def bounding_box(self) -> Optional[Tuple[Fraction, Fraction, Fraction, Fraction]]:
        pts = list(self.vertices) + [line.base for line in self.lines]
        if not pts:
            return None
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)


def cell_vertex(subdiv: DualSubdivision, k: int) -> Point:
    """
    The point where every monomial of cell k attains the same value: minus
    the gradient of the lifted face, solved by Cramer's rule on three vertices.
    """
    h = subdiv.height_map
    a, b, c = _independent_triple(subdiv.cells[k].vertices)
    u, v = sub(b, a), sub(c, a)
    du, dv = h[b] - h[a], h[c] - h[a]
    D = det(u, v)
    gx = Fraction(du * v[1] - dv * u[1], D)
    gy = Fraction(u[0] * dv - v[0] * du, D)
    return (-gx, -gy)


def _independent_triple(vertices):
    a, b = vertices[0], vertices[1]
    for c in vertices[2:]:
        if det(sub(b, a), sub(c, a)) != 0:
            return a, b, c
    raise MalformedInput(f"cell {vertices} is flat")


def _outward_normal(cell, u, v) -> Vector:
    """Outward normal of the cell edge {u, v}, using the cell's counter-clockwise order."""
    for p, q in cell.directed_edges():
        if {p, q} == {u, v}:
            d = sub(q, p)
            return primitive((d[1], -d[0]))
    raise MalformedInput(f"{u}-{v} is not an edge of cell {cell.vertices}")


def _assemble_curve(subdiv: DualSubdivision, positions: Sequence[Point]) -> TropicalCurve:
    edges, rays = [], []
    for de in subdiv.edges:
        u, v = de.endpoints
        if de.is_boundary:
            c = de.cells[0]
            rays.append(CurveRay(c, _outward_normal(subdiv.cells[c], u, v), de.weight, de.endpoints))
            continue
        a, b = de.cells
        direction = primitive(sub(positions[b], positions[a]))
        assert dot(direction, sub(v, u)) == 0, "curve edge must be perpendicular to its dual"
        edges.append(CurveEdge(a, b, de.weight, direction, de.endpoints))
    return TropicalCurve(tuple(positions), tuple(edges), tuple(rays), (),
                         tuple(range(len(positions))), subdiv)


def _segment_curve(subdiv: DualSubdivision) -> TropicalCurve:
    h = subdiv.height_map
    lines = []
    for cell in subdiv.cells:
        u, v = cell.vertices
        d = sub(v, u)
        # h_u + u.X = h_v + v.X  <=>  d.X = h_u - h_v
        base = scale(Fraction(h[u] - h[v], dot(d, d)), d)
        lines.append(CurveLine(base, primitive((-d[1], d[0])), lattice_length(u, v), (u, v)))
    return TropicalCurve(lines=tuple(lines), subdivision=subdiv)


def tropical_curve(P: BiPoly) -> TropicalCurve:
    """The corner locus of P, with one vertex per cell of the dual subdivision."""
    subdiv = dual_subdivision(P)
    if subdiv.degenerate:
        curve = _segment_curve(subdiv)
    else:
        curve = _assemble_curve(subdiv, [cell_vertex(subdiv, k) for k in range(len(subdiv.cells))])
    logger.info("✓ tropical curve: %d vertices, %d edges, %d rays, %d lines",
                len(curve.vertices), len(curve.edges), len(curve.rays), len(curve.lines))
    return curve


def translate_curve(C: TropicalCurve, v) -> TropicalCurve:
    v = (Fraction(v[0]), Fraction(v[1]))
    return TropicalCurve(tuple(add(p, v) for p in C.vertices), C.edges, C.rays,
                         tuple(CurveLine(add(line.base, v), line.direction, line.weight, line.dual)
                               for line in C.lines),
                         C.vertex_cells, C.subdivision)


def curve_signature(C: TropicalCurve) -> Tuple:
    """Relabelling-invariant description: compares curves as weighted point sets."""
    edges = sorted((tuple(sorted((C.vertices[e.start], C.vertices[e.end]))), e.weight) for e in C.edges)
    rays = sorted((C.vertices[r.base], r.direction, r.weight) for r in C.rays)
    lines = []
    for line in C.lines:
        # normalise to the point of the line closest to the origin
        d = line.direction
        t = Fraction(dot(line.base, d), dot(d, d))
        base = sub(line.base, scale(t, d))
        lines.append((base, max(d, (-d[0], -d[1])), line.weight))
    return tuple(edges), tuple(rays), tuple(sorted(lines))


# --- degree and balancing ---

class DegreeReport(NamedTuple):
    degree: int
    standard_support: bool
    direction_sums: Dict[Vector, int]


STANDARD_DIRECTIONS = ((-1, 0), (0, -1), (1, 1))


def degree(C: TropicalCurve) -> DegreeReport:
    """
    Sum of the weights of the ends in direction (-1, 0). For a curve of a
    polynomial with a_00, a_d0, a_0d finite the sums in directions (0, -1) and
    (1, 1) agree with it; otherwise `standard_support` is False.
    """
    sums = {d: 0 for d in STANDARD_DIRECTIONS}
    for r in C.rays:
        if r.direction in sums:
            sums[r.direction] += r.weight
    for line in C.lines:
        for d in (line.direction, (-line.direction[0], -line.direction[1])):
            if d in sums:
                sums[d] += line.weight
    d = sums[(-1, 0)]
    standard = False
    if C.subdivision is not None and d > 0:
        standard = set(C.subdivision.newton_polygon) == {(0, 0), (d, 0), (0, d)}
    return DegreeReport(d, standard, sums)


@dataclass
class BalancingReport:
    ok: bool
    violations: List[Tuple[int, Tuple[Fraction, Fraction]]]


def check_balancing(C: TropicalCurve) -> BalancingReport:
    """
    At every vertex the weighted outgoing primitive directions must sum to zero.
    Stored directions are validated first; a malformed graph raises instead of
    being reported as unbalanced.
    """
    n = len(C.vertices)
    totals = [(0, 0) for _ in range(n)]
    for e in C.edges:
        if not is_primitive(e.direction):
            raise MalformedInput(f"edge direction {e.direction} is not primitive")
        if not (0 <= e.start < n and 0 <= e.end < n):
            raise MalformedInput(f"edge endpoints {e.start}, {e.end} out of range")
        span = sub(C.vertices[e.end], C.vertices[e.start])
        if det(span, e.direction) != 0 or dot(span, e.direction) <= 0:
            raise MalformedInput(f"edge direction {e.direction} does not point from vertex {e.start} to {e.end}")
        totals[e.start] = add(totals[e.start], scale(e.weight, e.direction))
        totals[e.end] = sub(totals[e.end], scale(e.weight, e.direction))
    for r in C.rays:
        if not is_primitive(r.direction):
            raise MalformedInput(f"ray direction {r.direction} is not primitive")
        if not 0 <= r.base < n:
            raise MalformedInput(f"ray base {r.base} out of range")
        totals[r.base] = add(totals[r.base], scale(r.weight, r.direction))
    violations = [(k, t) for k, t in enumerate(totals) if t != (0, 0)]
    if violations:
        logger.warning("balancing fails at %d vertices", len(violations))
    return BalancingReport(not violations, violations)


# --- reconstruction from a dual subdivision ---

def _opposite_vertex(cell, u, v):
    d = sub(v, u)
    return next(w for w in cell.vertices if det(d, sub(w, u)) != 0)


def _tree_cycle(parent: Dict[int, Optional[int]], a: int, b: int) -> List[int]:
    path_a = [a]
    while parent[path_a[-1]] is not None:
        path_a.append(parent[path_a[-1]])
    path_b = [b]
    while parent[path_b[-1]] is not None:
        path_b.append(parent[path_b[-1]])
    common = set(path_a) & set(path_b)
    head = [c for c in path_a if c not in common]
    tail = [c for c in path_b if c not in common]
    meet = next(c for c in path_a if c in common)
    return head + [meet] + list(reversed(tail))


def _propagate(subdiv: DualSubdivision, start: int, position: Point, heights) -> List[Point]:
    """
    Breadth-first placement of cell vertices. Across the dual edge uv the curve
    edge runs along the normal n of uv pointing into the neighbouring cell;
    with heights its length is fixed by the monomial equation of the far
    vertex, without heights every length is 1.
    """
    cells = subdiv.cells
    neighbours: Dict[int, List] = {k: [] for k in range(len(cells))}
    for de in subdiv.interior_edges():
        a, b = de.cells
        neighbours[a].append((b, de.endpoints))
        neighbours[b].append((a, de.endpoints))

    positions: Dict[int, Point] = {start: position}
    parent: Dict[int, Optional[int]] = {start: None}
    queue = deque([start])

    def step(a, b, uv):
        u, v = uv
        d = sub(v, u)
        n = primitive((-d[1], d[0]))
        w = _opposite_vertex(cells[b], u, v)
        if dot(sub(w, u), n) < 0:
            n = (-n[0], -n[1])
        if heights is None:
            return n, Fraction(1)
        num = heights[u] - heights[w] + dot(sub(u, w), positions[a])
        return n, Fraction(num, dot(sub(w, u), n))

    while queue:
        a = queue.popleft()
        for b, uv in neighbours[a]:
            n, length = step(a, b, uv)
            if b not in positions:
                if length <= 0:
                    raise NonRegularSubdivision(f"non-positive edge length between cells {a} and {b}", [a, b])
                positions[b] = add(positions[a], scale(length, n))
                parent[b] = a
                queue.append(b)
                continue
            span = sub(positions[b], positions[a])
            if det(span, n) != 0 or dot(span, n) <= 0 or (heights is not None and span != scale(length, n)):
                raise NonRegularSubdivision(
                    f"cells {a} and {b} cannot be joined consistently", _tree_cycle(parent, a, b))

    if len(positions) != len(cells):
        raise MalformedInput("subdivision is not connected through interior edges")
    return [positions[k] for k in range(len(cells))]


def find_lift(subdiv: DualSubdivision) -> Dict:
    """
    Heights realising the subdivision, from a linear program: the points of a
    cell are coplanar, and across every interior edge the far vertex of the
    neighbouring cell lies at least one unit below the cell's plane.
    """
    points = subdiv.lattice_points
    index = {p: k for k, p in enumerate(points)}
    eq_rows, ub_rows = [], []

    def affine_row(triple, s):
        # coefficients expressing the plane through `triple` evaluated at s
        a, b, c = triple
        D = det(sub(b, a), sub(c, a))
        lb = Fraction(det(sub(s, a), sub(c, a)), D)
        lc = Fraction(det(sub(b, a), sub(s, a)), D)
        row = np.zeros(len(points))
        row[index[a]] += float(1 - lb - lc)
        row[index[b]] += float(lb)
        row[index[c]] += float(lc)
        return row

    triples = [_independent_triple(c.vertices) for c in subdiv.cells]
    for cell, triple in zip(subdiv.cells, triples):
        for s in cell.points:
            if s not in triple:
                row = affine_row(triple, s)
                row[index[s]] -= 1.0
                eq_rows.append(row)
    for de in subdiv.interior_edges():
        a, b = de.cells
        for near, far in ((a, b), (b, a)):
            w = _opposite_vertex(subdiv.cells[far], *de.endpoints)
            row = -affine_row(triples[near], w)
            row[index[w]] += 1.0
            ub_rows.append(row)

    result = linprog(
        c=np.ones(len(points)),
        A_ub=np.array(ub_rows) if ub_rows else None,
        b_ub=-np.ones(len(ub_rows)) if ub_rows else None,
        A_eq=np.array(eq_rows) if eq_rows else None,
        b_eq=np.zeros(len(eq_rows)) if eq_rows else None,
        bounds=(0, None),
        method="highs",
    )
    if not result.success:
        raise NonRegularSubdivision(f"no lift realises the subdivision: {result.message}", [])
    heights = {p: Fraction(float(h)).limit_denominator(10 ** 6) for p, h in zip(points, result.x)}
    logger.debug("lift found by linear program: %s", heights)
    return heights


def curve_from_dual_description(subdiv: DualSubdivision, position, cell: int = 0) -> TropicalCurve:
    """
    A curve with the combinatorics of `subdiv` whose vertex dual to `cell`
    sits at `position`. Edge lengths come from the stored heights; a picture
    without heights gets unit lengths when they close up, and otherwise a lift
    found by linear programming.
    """
    if subdiv.degenerate or not subdiv.cells:
        raise MalformedInput("reconstruction needs a two-dimensional subdivision")
    position = (Fraction(position[0]), Fraction(position[1]))
    heights = subdiv.height_map
    if heights is not None:
        positions = _propagate(subdiv, cell, position, heights)
    else:
        try:
            positions = _propagate(subdiv, cell, position, None)
        except NonRegularSubdivision as unit_failure:
            logger.info("unit edge lengths do not close up, searching for a lift")
            try:
                heights = find_lift(subdiv)
            except NonRegularSubdivision:
                raise unit_failure
            lifted = BiPoly.from_terms({p: h for p, h in heights.items()})
            found = {frozenset(c.vertices) for c in dual_subdivision(lifted).cells}
            if found != {frozenset(c.vertices) for c in subdiv.cells}:
                raise unit_failure
            positions = _propagate(subdiv, cell, position, heights)
    curve = _assemble_curve(subdiv, positions)
    logger.info("✓ reconstructed curve: %d vertices", len(curve.vertices))
    return curve
