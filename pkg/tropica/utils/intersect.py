"""
Intersections of tropical curves.

Transverse crossings are counted with the lattice area w1 w2 |det(u1, u2)|.
Stable intersections translate the second curve by an infinitesimal
multiple of a direction v parallel to none of the edges; coordinates then
live in Q[eps]/(eps^2), ordered lexicographically, and the crossings are
grouped by their limit as eps -> 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import count
from typing import Dict, Iterator, List, Optional, Tuple

from tropica.utils.bipoly import BiPoly, multiply_bipolys
from tropica.utils.curves import TropicalCurve, tropical_curve, translate_curve
from tropica.utils.errors import MalformedInput, NonStandardSupport, NonTransverse
from tropica.utils.geometry import Piece, Point, Vector, det, dot, sub

logger = logging.getLogger(__name__)

TRANSVERSE = "transverse"
STABLE_LIMIT = "stable-limit"


@total_ordering
@dataclass(frozen=True)
class EpsNumber:
    """const + slope * eps with eps a positive infinitesimal."""
    const: Fraction
    slope: Fraction = Fraction(0)

    def __lt__(self, other):
        if not isinstance(other, EpsNumber):
            other = EpsNumber(Fraction(other))
        return (self.const, self.slope) < (other.const, other.slope)

    def __eq__(self, other):
        if not isinstance(other, EpsNumber):
            other = EpsNumber(Fraction(other))
        return (self.const, self.slope) == (other.const, other.slope)

    def __hash__(self):
        return hash((self.const, self.slope))

    def __add__(self, other):
        return EpsNumber(self.const + other.const, self.slope + other.slope)

    def __mul__(self, k):
        return EpsNumber(self.const * k, self.slope * k)

    def at(self, eps) -> Fraction:
        return self.const + self.slope * eps


EpsPoint = Tuple[EpsNumber, EpsNumber]


@dataclass(frozen=True)
class IntersectionPoint:
    point: Point
    multiplicity: int
    kind: str
    witnesses: Tuple[Tuple[Tuple[str, int], Tuple[str, int]], ...]


def union_curve(P1: BiPoly, P2: BiPoly) -> Tuple[BiPoly, TropicalCurve]:
    """The product polynomial, whose curve is the union of both curves."""
    Q = multiply_bipolys(P1, P2)
    return Q, tropical_curve(Q)


def _collinear_overlap(p1: Piece, p2: Piece):
    """Range of p1-parameters covered by the collinear piece p2."""
    s0 = p1.param_of(p2.base)
    sign = 1 if dot(p1.direction, p2.direction) > 0 else -1
    ends = [None if t is None else s0 + sign * t for t in (p2.lo, p2.hi)]
    if sign < 0:
        ends.reverse()
    lo = max((t for t in (p1.lo, ends[0]) if t is not None), default=None)
    hi = min((t for t in (p1.hi, ends[1]) if t is not None), default=None)
    return lo, hi


def _transverse_crossing(p1: Piece, p2: Piece) -> Optional[Tuple[Point, int]]:
    D = det(p1.direction, p2.direction)
    w = sub(p2.base, p1.base)
    if D == 0:
        if det(p1.direction, w) != 0:
            return None
        lo, hi = _collinear_overlap(p1, p2)
        if lo is not None and hi is not None and lo > hi:
            return None
        if lo is not None and lo == hi:
            raise NonTransverse("vertex-on-curve", p1.at(lo))
        anchor = p1.at(lo if lo is not None else hi if hi is not None else 0)
        raise NonTransverse("overlapping-parallel-edges", anchor)
    s = Fraction(det(w, p2.direction), D)
    r = Fraction(det(w, p1.direction), D)
    if not (p1.contains_param(s) and p2.contains_param(r)):
        return None
    where = p1.at(s)
    if not (p1.contains_param(s, strict=True) and p2.contains_param(r, strict=True)):
        raise NonTransverse("vertex-on-curve", where)
    return where, p1.weight * p2.weight * abs(D)


def transverse_intersections(C1: TropicalCurve, C2: TropicalCurve) -> List[IntersectionPoint]:
    """
    Crossings of two curves meeting only in interiors of edges. Raises
    NonTransverse otherwise; stable_intersections handles every configuration.
    """
    found = []
    for l1, p1 in C1.pieces():
        for l2, p2 in C2.pieces():
            hit = _transverse_crossing(p1, p2)
            if hit is not None:
                where, mult = hit
                found.append(IntersectionPoint(where, mult, TRANSVERSE, ((l1, l2),)))
    found.sort(key=lambda ip: ip.point)
    logger.info("✓ %d transverse intersection points", len(found))
    return found


def perturbations(C1: TropicalCurve, C2: TropicalCurve) -> Iterator[Vector]:
    """Directions (1, 1), (1, 2), (1, 3), ... parallel to no edge, ray or line of either curve."""
    directions = C1.directions() + C2.directions()
    for k in count(1):
        v = (1, k)
        if all(det(v, d) != 0 for d in directions):
            yield v


def _in_range(piece: Piece, s: EpsNumber) -> bool:
    return (piece.lo is None or s > EpsNumber(piece.lo)) and (piece.hi is None or s < EpsNumber(piece.hi))


def _eps_crossing(p1: Piece, p2: Piece, v: Vector):
    """Crossing of p1 with p2 translated by eps * v, as parameters on both pieces."""
    D = det(p1.direction, p2.direction)
    if D == 0:
        return None
    w = sub(p2.base, p1.base)
    s = EpsNumber(Fraction(det(w, p2.direction), D), Fraction(det(v, p2.direction), D))
    r = EpsNumber(Fraction(det(w, p1.direction), D), Fraction(det(v, p1.direction), D))
    if _in_range(p1, s) and _in_range(p2, r):
        return s, r
    return None


def stable_intersections(C1: TropicalCurve, C2: TropicalCurve,
                         direction: Optional[Vector] = None) -> List[IntersectionPoint]:
    """
    Limits of the crossings of C1 with C2 + eps * v. Each limit point carries
    the summed multiplicity of the crossings converging to it. C1 may equal C2.
    """
    v = direction or next(perturbations(C1, C2))
    if any(det(v, d) == 0 for d in C1.directions() + C2.directions()):
        raise MalformedInput(f"perturbation {v} is parallel to an edge", direction=list(v))
    groups: Dict[Point, List] = {}
    for l1, p1 in C1.pieces():
        for l2, p2 in C2.pieces():
            hit = _eps_crossing(p1, p2, v)
            if hit is None:
                continue
            s, r = hit
            limit = p1.at(s.const)
            interior = p1.contains_param(s.const, strict=True) and p2.contains_param(r.const, strict=True)
            mult = p1.weight * p2.weight * abs(det(p1.direction, p2.direction))
            groups.setdefault(limit, []).append(((l1, l2), mult, interior))

    found = []
    for limit in sorted(groups):
        hits = groups[limit]
        kind = TRANSVERSE if len(hits) == 1 and hits[0][2] else STABLE_LIMIT
        found.append(IntersectionPoint(limit, sum(m for _, m, _ in hits), kind,
                                       tuple(label for label, _, _ in hits)))
    logger.info("✓ %d stable intersection points (perturbation %s)", len(found), v)
    return found


def intersections_after_translation(C1: TropicalCurve, C2: TropicalCurve, offset) -> List[IntersectionPoint]:
    """Transverse intersections of C1 with C2 moved by a small explicit rational offset."""
    return transverse_intersections(C1, translate_curve(C2, offset))


@dataclass
class BezoutReport:
    d1: int
    d2: int
    total: int
    ok: bool
    points: List[IntersectionPoint]


def bezout_check(P1: BiPoly, P2: BiPoly) -> BezoutReport:
    """Two curves of degrees d1 and d2 meet stably in d1 * d2 points counted with multiplicity."""
    for name, P in (("first", P1), ("second", P2)):
        if not P.has_standard_support:
            raise NonStandardSupport(
                f"{name} polynomial lacks a corner monomial of its degree triangle; "
                "Bezout's count needs a_00, a_d0 and a_0d finite",
                polynomial=str(P))
    points = stable_intersections(tropical_curve(P1), tropical_curve(P2))
    total = sum(p.multiplicity for p in points)
    report = BezoutReport(P1.degree, P2.degree, total, total == P1.degree * P2.degree, points)
    if report.ok:
        logger.info("✓ Bezout: %d = %d * %d", total, report.d1, report.d2)
    else:
        logger.warning("Bezout mismatch: %d != %d * %d", total, report.d1, report.d2)
    return report
