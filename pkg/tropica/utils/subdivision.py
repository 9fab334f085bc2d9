"""
Dual subdivisions of Newton polygons.

Each support point (i, j) is lifted to height a_ij; the upper faces of the
lifted point set project to the cells of the subdivision. Upper faces are
found by gift wrapping: starting from one edge of the Newton polygon, the
face on the left of a directed cell edge is the plane through that edge
which leans furthest towards the left without passing under any point.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from tropica.utils.bipoly import BiPoly, Exponent
from tropica.utils.errors import MalformedInput
from tropica.utils.geometry import (
    all_collinear,
    convex_hull,
    cross,
    dot,
    lattice_length,
    polygon_area,
    primitive,
    sub,
    upper_chain,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cell:
    vertices: Tuple[Exponent, ...]   # counter-clockwise
    points: Tuple[Exponent, ...]     # every support point lifted onto this face
    area: Fraction

    def directed_edges(self) -> List[Tuple[Exponent, Exponent]]:
        n = len(self.vertices)
        if n == 2:
            return [self.vertices]
        return [(self.vertices[k], self.vertices[(k + 1) % n]) for k in range(n)]


@dataclass(frozen=True)
class DualEdge:
    endpoints: Tuple[Exponent, Exponent]
    cells: Tuple[int, ...]
    weight: int

    @property
    def is_boundary(self) -> bool:
        return len(self.cells) == 1


@dataclass(frozen=True)
class DualSubdivision:
    newton_polygon: Tuple[Exponent, ...]
    support: Tuple[Exponent, ...]
    heights: Optional[Tuple[Tuple[Exponent, Fraction], ...]]
    cells: Tuple[Cell, ...]
    edges: Tuple[DualEdge, ...]
    degenerate: bool = False

    @property
    def height_map(self) -> Optional[Dict[Exponent, Fraction]]:
        return None if self.heights is None else dict(self.heights)

    @property
    def lattice_points(self) -> List[Exponent]:
        return sorted({p for c in self.cells for p in c.points})

    @property
    def area(self) -> Fraction:
        return polygon_area(self.newton_polygon)

    def edge_index(self) -> Dict[Tuple[Exponent, Exponent], int]:
        return {e.endpoints: k for k, e in enumerate(self.edges)}

    def interior_edges(self) -> List[DualEdge]:
        return [e for e in self.edges if not e.is_boundary]

    def boundary_edges(self) -> List[DualEdge]:
        return [e for e in self.edges if e.is_boundary]


def _edge_key(u, v) -> Tuple[Exponent, Exponent]:
    return (u, v) if u <= v else (v, u)


def _on_newton_boundary(newton: Sequence, u, v) -> bool:
    n = len(newton)
    for k in range(n):
        a, b = newton[k], newton[(k + 1) % n]
        if cross(a, b, u) == 0 and cross(a, b, v) == 0:
            return True
    return False


def _facet_left(p, q, heights: Dict) -> List[Exponent]:
    """Support points on the upper face left of the upper hull edge p -> q."""
    d = sub(q, p)
    dd = dot(d, d)
    hp, hq = heights[p], heights[q]

    def on_line(s):
        return hp + (hq - hp) * Fraction(dot(sub(s, p), d), dd)

    tilt = None
    for s, h in heights.items():
        side = cross(p, q, s)
        if side > 0:
            lam = (h - on_line(s)) / side
            if tilt is None or lam > tilt:
                tilt = lam
    if tilt is None:
        raise MalformedInput(f"no support point left of {p} -> {q}")
    return sorted(s for s, h in heights.items()
                  if cross(p, q, s) >= 0 and h == on_line(s) + tilt * cross(p, q, s))


def _chain_along(a, b, heights: Dict) -> List[Exponent]:
    """Upper hull of the lifted support points on segment ab, ordered from a to b."""
    d = primitive(sub(b, a))
    onto = {}
    for s, h in heights.items():
        if cross(a, b, s) == 0:
            t = Fraction(dot(sub(s, a), d), dot(d, d))
            if 0 <= t <= Fraction(dot(sub(b, a), d), dot(d, d)):
                onto[t] = s
    chain = upper_chain((t, heights[s]) for t, s in onto.items())
    return [onto[t] for t, _ in chain]


def _segment_subdivision(support, heights) -> DualSubdivision:
    a, b = support[0], support[-1]
    chain = _chain_along(a, b, heights)
    d = primitive(sub(b, a))
    cells = []
    for u, v in zip(chain, chain[1:]):
        # points of the lifted segment between u and v
        tu, tv = dot(sub(u, a), d), dot(sub(v, a), d)
        pts = tuple(s for s in support
                    if tu <= dot(sub(s, a), d) <= tv
                    and heights[s] == heights[u] + (heights[v] - heights[u])
                    * Fraction(dot(sub(s, u), d), dot(sub(v, u), d)))
        cells.append(Cell((u, v), pts, Fraction(0)))
    logger.debug("collinear support: %d segment cells", len(cells))
    return DualSubdivision((a, b), tuple(support), tuple(sorted(heights.items())),
                           tuple(cells), (), degenerate=True)


def _collect_edges(cells: Sequence[Cell]) -> Dict[Tuple[Exponent, Exponent], List[int]]:
    incidence: Dict[Tuple[Exponent, Exponent], List[int]] = {}
    for k, cell in enumerate(cells):
        for u, v in cell.directed_edges():
            incidence.setdefault(_edge_key(u, v), []).append(k)
    return incidence


def _assemble(newton, support, heights, cells) -> DualSubdivision:
    cells = sorted(cells, key=lambda c: c.vertices)
    incidence = _collect_edges(cells)
    edges = []
    for key in sorted(incidence):
        owners = incidence[key]
        if len(owners) > 2:
            raise MalformedInput(f"dual edge {key} bounds {len(owners)} cells")
        if len(owners) == 1 and not _on_newton_boundary(newton, *key):
            raise MalformedInput(f"dual edge {key} bounds one cell but is interior")
        edges.append(DualEdge(key, tuple(owners), lattice_length(*key)))
    return DualSubdivision(tuple(newton), tuple(support), heights, tuple(cells), tuple(edges))


@lru_cache(maxsize=256)
def dual_subdivision(P: BiPoly) -> DualSubdivision:
    """Regular subdivision of the Newton polygon of P induced by its coefficients."""
    heights = {e: a.value for e, a in P.terms}
    support = sorted(heights)
    if len(support) == 1:
        return DualSubdivision((support[0],), tuple(support), tuple(heights.items()),
                               (), (), degenerate=True)
    if all_collinear(support):
        return _segment_subdivision(support, heights)

    newton = convex_hull(support)
    start = _chain_along(newton[0], newton[1], heights)
    queue = deque([(start[0], start[1])])
    found: Dict[frozenset, Cell] = {}
    while queue:
        p, q = queue.popleft()
        facet = _facet_left(p, q, heights)
        hull = tuple(convex_hull(facet))
        if frozenset(hull) in found:
            continue
        found[frozenset(hull)] = Cell(hull, tuple(facet), polygon_area(hull))
        for u, v in zip(hull, hull[1:] + hull[:1]):
            if not _on_newton_boundary(newton, u, v):
                queue.append((v, u))

    subdiv = _assemble(newton, support, tuple(sorted(heights.items())), found.values())
    logger.info("✓ dual subdivision: %d cells, %d edges", len(subdiv.cells), len(subdiv.edges))
    return subdiv


def subdivision_from_cells(cells: Sequence[Sequence], heights: Optional[Dict] = None) -> DualSubdivision:
    """
    Build a subdivision from its picture: a list of lattice polygons, each given
    by the lattice points it uses, and optionally the lift heights.
    """
    built = []
    for pts in cells:
        pts = sorted({(int(i), int(j)) for i, j in pts})
        if len(pts) < 3 or all_collinear(pts):
            raise MalformedInput(f"cell {pts} is not two-dimensional")
        hull = tuple(convex_hull(pts))
        built.append(Cell(hull, tuple(pts), polygon_area(hull)))
    support = sorted({p for c in built for p in c.points})
    newton = convex_hull(support)
    if sum(c.area for c in built) != polygon_area(newton):
        raise MalformedInput("cells do not tile their convex hull")
    lift = None
    if heights is not None:
        heights = {tuple(e): Fraction(h) for e, h in heights.items()}
        missing = [p for p in support if p not in heights]
        if missing:
            raise MalformedInput(f"no height for lattice points {missing}")
        lift = tuple(sorted((p, heights[p]) for p in support))
    return _assemble(newton, support, lift, built)
