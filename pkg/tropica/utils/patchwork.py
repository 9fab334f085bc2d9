"""
Combinatorial patchworking of tropical curves.

A real tropical curve keeps, for every edge of a tropical curve, two of its
four reflected copies in the sign quadrants (eps1, eps2). The copies that
survive together differ by the edge direction (alpha, beta) mod 2, and at
every vertex copy either none or two of the three incident edge copies
survive. Edge ids are the bounded edges first, then the rays.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Tuple

import networkx as nx

from tropica.config import DEFAULT_ENUMERATION_LIMIT
from tropica.utils.curves import TropicalCurve
from tropica.utils.errors import MalformedInput, PreconditionFailed
from tropica.utils.geometry import Point, add, point_in_polygon, polygon_area, scale

logger = logging.getLogger(__name__)

QUADRANTS = tuple(product((0, 1), repeat=2))
EXIT_LEVEL = Fraction(1, 2)


class QuadrantCopy(NamedTuple):
    edge: int
    quadrant: Tuple[int, int]


def harnack_bound(d: int) -> int:
    return (d * (d - 1) + 2) // 2


def _edge_directions(C: TropicalCurve) -> List[Tuple[int, int]]:
    return [e.direction for e in C.edges] + [r.direction for r in C.rays]


def _incidence(C: TropicalCurve) -> Dict[int, List[int]]:
    """Vertex -> ids of incident edges and rays."""
    at = {k: [] for k in range(len(C.vertices))}
    for k, e in enumerate(C.edges):
        at[e.start].append(k)
        at[e.end].append(k)
    for k, r in enumerate(C.rays):
        at[r.base].append(len(C.edges) + k)
    return at


def quadrant_pairs(direction) -> Tuple[frozenset, frozenset]:
    """The two admissible survivor pairs of an edge; pair 0 contains quadrant (0, 0)."""
    shift = (direction[0] % 2, direction[1] % 2)
    first = frozenset({(0, 0), shift})
    return first, frozenset(q for q in QUADRANTS if q not in first)


def flip(quadrant, direction) -> Tuple[int, int]:
    return ((quadrant[0] + direction[0]) % 2, (quadrant[1] + direction[1]) % 2)


def check_preconditions(C: TropicalCurve):
    if C.lines:
        raise PreconditionFailed("non-triangular cell", detail="collinear support has no two-dimensional cells")
    for k, w in enumerate([e.weight for e in C.edges] + [r.weight for r in C.rays]):
        if w % 2 == 0:
            raise PreconditionFailed("even-weight edge", edge=k, weight=w)
    for v, incident in _incidence(C).items():
        if len(incident) != 3:
            raise PreconditionFailed("non-triangular cell", vertex=v, valence=len(incident))


def _normalise_survivors(C: TropicalCurve, survivors) -> Dict[int, frozenset]:
    """Accept {edge: quadrants} or an iterable of QuadrantCopy."""
    n = len(C.edges) + len(C.rays)
    out: Dict[int, set] = {k: set() for k in range(n)}
    if isinstance(survivors, dict):
        items = survivors.items()
    else:
        items = [(edge, [quadrant]) for edge, quadrant in survivors]
    for edge, quadrants in items:
        if not (isinstance(edge, int) and 0 <= edge < n):
            raise MalformedInput(f"unknown edge id {edge!r}")
        for q in quadrants:
            q = tuple(q)
            if q not in QUADRANTS:
                raise MalformedInput(f"quadrant must be a pair of bits, got {q!r}")
            out[edge].add(q)
    return {k: frozenset(v) for k, v in out.items()}


@dataclass
class Violation:
    rule: str                       # "pairing" or "vertex"
    edge: Optional[int] = None
    vertex: Optional[int] = None
    quadrant: Optional[Tuple[int, int]] = None
    survivors: int = 0


@dataclass
class ValidationReport:
    ok: bool
    violations: List[Violation] = field(default_factory=list)


def patchwork_validate(C: TropicalCurve, survivors) -> ValidationReport:
    check_preconditions(C)
    chosen = _normalise_survivors(C, survivors)
    violations = []
    for k, direction in enumerate(_edge_directions(C)):
        if chosen[k] not in quadrant_pairs(direction):
            violations.append(Violation("pairing", edge=k, survivors=len(chosen[k])))
    for v, incident in _incidence(C).items():
        for q in QUADRANTS:
            alive = sum(1 for k in incident if q in chosen[k])
            if alive not in (0, 2):
                violations.append(Violation("vertex", vertex=v, quadrant=q, survivors=alive))
    return ValidationReport(not violations, violations)


@dataclass(frozen=True)
class RealTropicalCurve:
    source: TropicalCurve
    survivors: Tuple[QuadrantCopy, ...]

    def survivor_map(self) -> Dict[int, frozenset]:
        return _normalise_survivors(self.source, self.survivors)

    @property
    def gluings(self) -> List[Tuple[QuadrantCopy, QuadrantCopy]]:
        """Surviving ray copies identified across a coordinate axis or the origin."""
        out = []
        offset = len(self.source.edges)
        chosen = self.survivor_map()
        for k, r in enumerate(self.source.rays):
            if not _glues(r.direction):
                continue
            quadrants = sorted(chosen[offset + k])
            for q in quadrants:
                partner = flip(q, r.direction)
                if partner in chosen[offset + k] and q < partner:
                    out.append((QuadrantCopy(offset + k, q), QuadrantCopy(offset + k, partner)))
        return out


def _glues(direction) -> bool:
    """A ray glues when it tends to an axis or the origin, i.e. no component grows."""
    return direction[0] <= 0 and direction[1] <= 0


def build_real_curve(C: TropicalCurve, survivors) -> RealTropicalCurve:
    chosen = _normalise_survivors(C, survivors)
    copies = tuple(QuadrantCopy(k, q) for k in sorted(chosen) for q in sorted(chosen[k]))
    return RealTropicalCurve(C, copies)


def survivors_from_signs(C: TropicalCurve, signs: Dict) -> Dict[int, frozenset]:
    """
    Survivors given by a sign at every lattice point of the dual subdivision:
    an edge copy survives in the quadrants where the two ends of its dual
    segment carry opposite signs once reflected.
    """
    def sign_in(p, q):
        s = signs[tuple(p)]
        return s * (-1) ** (p[0] * q[0] + p[1] * q[1])

    out = {}
    duals = [e.dual for e in C.edges] + [r.dual for r in C.rays]
    for k, dual in enumerate(duals):
        if dual is None:
            raise MalformedInput("curve carries no dual subdivision")
        u, v = dual
        missing = [p for p in (u, v) if tuple(p) not in signs]
        if missing:
            raise MalformedInput(f"no sign for lattice points {missing}")
        out[k] = frozenset(q for q in QUADRANTS if sign_in(u, q) != sign_in(v, q))
    return out


def patchwork_enumerate(C: TropicalCurve, limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[RealTropicalCurve]:
    """
    Valid real tropical curves over C in deterministic order: edges by id,
    pair 0 before pair 1, pruned as soon as a vertex copy holds three survivors
    or a finished vertex copy holds exactly one.
    """
    check_preconditions(C)
    directions = _edge_directions(C)
    incidence = _incidence(C)
    last_edge = {v: max(ids) for v, ids in incidence.items()}

    results: List[RealTropicalCurve] = []
    chosen: Dict[int, frozenset] = {}

    def fine(k):
        for v in set(v for v, ids in incidence.items() if k in ids):
            done = k >= last_edge[v]
            for q in QUADRANTS:
                alive = sum(1 for e in incidence[v] if e in chosen and q in chosen[e])
                if alive > 2 or (done and alive == 1):
                    return False
        return True

    def extend(k):
        if len(results) >= limit:
            return
        if k == len(directions):
            results.append(build_real_curve(C, dict(chosen)))
            return
        for pair in quadrant_pairs(directions[k]):
            chosen[k] = pair
            if fine(k):
                extend(k + 1)
            del chosen[k]

    extend(0)
    logger.info("✓ %d real tropical curves enumerated (limit %d)", len(results), limit)
    return results


# --- drawing and arrangement ---

def _reflect(p, quadrant) -> Point:
    return ((-1) ** quadrant[0] * p[0], (-1) ** quadrant[1] * p[1])


def _ray_path(base: Point, direction, far: Fraction) -> List[Point]:
    """
    Path of a ray in the positive-quadrant picture. Rays tending to an axis
    run straight onto it; rays tending to the origin run straight until a
    coordinate drops to 1/2 and then onto the origin; the others are cut at
    length `far`.
    """
    a, b = direction
    if not _glues(direction):
        return [base, add(base, scale(far, direction))]
    if b == 0:
        return [base, (Fraction(0), base[1])]
    if a == 0:
        return [base, (base[0], Fraction(0))]
    s = min((base[0] - EXIT_LEVEL) / -a, (base[1] - EXIT_LEVEL) / -b)
    return [base, add(base, scale(s, direction)), (Fraction(0), Fraction(0))]


def _placed_vertices(C: TropicalCurve) -> List[Point]:
    """Vertices translated so that the smallest coordinates are 1."""
    shift = (1 - min(p[0] for p in C.vertices), 1 - min(p[1] for p in C.vertices))
    return [add(p, shift) for p in C.vertices]


def quadrant_drawing(R: RealTropicalCurve, far: Optional[Fraction] = None) -> Dict[QuadrantCopy, List[Point]]:
    """
    Planar picture of R: the source curve translated so every vertex has both
    coordinates at least 1, then reflected into the quadrant of each copy.
    Every polyline starts at the copy's first vertex.
    """
    C = R.source
    if not C.vertices:
        return {}
    placed = _placed_vertices(C)
    if far is None:
        xs, ys = [p[0] for p in placed], [p[1] for p in placed]
        far = max(max(xs) - min(xs), max(ys) - min(ys)) + 2
    drawing = {}
    n_edges = len(C.edges)
    for copy in R.survivors:
        if copy.edge < n_edges:
            e = C.edges[copy.edge]
            path = [placed[e.start], placed[e.end]]
        else:
            r = C.rays[copy.edge - n_edges]
            path = _ray_path(placed[r.base], r.direction, far)
        drawing[copy] = [_reflect(p, copy.quadrant) for p in path]
    return drawing


@dataclass
class ComponentInfo:
    index: int
    bounded: bool
    quadrants: List[Tuple[int, int]]
    ends: int


@dataclass
class ArrangementStats:
    component_count: int
    bounded_count: int
    unbounded_count: int
    nesting: List[Tuple[int, Optional[int]]]     # (bounded component, enclosing bounded component)
    components: List[ComponentInfo] = field(default_factory=list)


def _real_graph(R: RealTropicalCurve) -> nx.Graph:
    """
    Vertex copies ("v", vertex, quadrant) and ray copies ("r", edge, quadrant);
    glued ray copies are joined, the others are open ends.
    """
    C = R.source
    n_edges = len(C.edges)
    G = nx.Graph()
    for copy in R.survivors:
        q = copy.quadrant
        if copy.edge < n_edges:
            e = C.edges[copy.edge]
            G.add_edge(("v", e.start, q), ("v", e.end, q), copy=copy)
        else:
            r = C.rays[copy.edge - n_edges]
            G.add_node(("r", copy.edge, q), end=not _glues(r.direction))
            G.add_edge(("v", r.base, q), ("r", copy.edge, q), copy=copy)
    for one, other in R.gluings:
        G.add_edge(("r", one.edge, one.quadrant), ("r", other.edge, other.quadrant))
    return G


def _component_polygon(G: nx.Graph, nodes, drawing, placed) -> List[Point]:
    """Walk a cycle of the real graph and collect the drawn points along it."""
    start = min(n for n in nodes if n[0] == "v")
    ring, previous, current = [], None, start
    while True:
        following = sorted(n for n in G.neighbors(current) if n != previous)
        nxt = following[0] if following else previous
        data = G.get_edge_data(current, nxt)
        if "copy" in data:
            path = drawing[data["copy"]]
            forward = current[0] == "v" and path[0] == _vertex_point(current, placed)
            ring.extend(path if forward else reversed(path))
        previous, current = current, nxt
        if current == start:
            break
    points = []
    for p in ring:
        if not points or points[-1] != p:
            points.append(p)
    if len(points) > 1 and points[0] == points[-1]:
        points.pop()
    return points


def _vertex_point(node, placed) -> Point:
    _, vertex, quadrant = node
    return _reflect(placed[vertex], quadrant)


def arrangement_stats(R: RealTropicalCurve) -> ArrangementStats:
    """Components of the real curve, which of them are bounded, and how the bounded ones nest."""
    G = _real_graph(R)
    components = sorted((sorted(c) for c in nx.connected_components(G)), key=lambda c: c[0])
    infos = []
    for k, nodes in enumerate(components):
        ends = sum(1 for n in nodes if G.nodes[n].get("end"))
        quadrants = sorted({n[2] for n in nodes})
        infos.append(ComponentInfo(k, ends == 0, quadrants, ends))

    polygons = {}
    if any(info.bounded for info in infos):
        drawing = quadrant_drawing(R)
        placed = _placed_vertices(R.source)
        for info in infos:
            if info.bounded:
                polygons[info.index] = _component_polygon(G, components[info.index], drawing, placed)
    nesting = []
    for k in polygons:
        inside = next(_vertex_point(n, placed) for n in components[k] if n[0] == "v")
        holders = [j for j, poly in polygons.items() if j != k and point_in_polygon(inside, poly)]
        parent = min(holders, key=lambda j: polygon_area(polygons[j])) if holders else None
        nesting.append((k, parent))

    bounded = len(polygons)
    stats = ArrangementStats(len(infos), bounded, len(infos) - bounded, nesting, infos)
    logger.info("✓ arrangement: %d components (%d bounded)", stats.component_count, stats.bounded_count)
    return stats
