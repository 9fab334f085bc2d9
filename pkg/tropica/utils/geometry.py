"""
Exact plane geometry over Fractions: orientation tests, hulls, lattice
lengths and parametrised pieces (segments, rays, lines).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from tropica.utils.errors import MalformedInput

Point = Tuple[Fraction, Fraction]
Vector = Tuple[int, int]


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def scale(k, v):
    return (k * v[0], k * v[1])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross(o, a, b):
    """Twice the signed area of triangle o, a, b; positive for a left turn."""
    return det(sub(a, o), sub(b, o))


def primitive(v) -> Vector:
    """Smallest integer vector pointing along the rational vector v."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise MalformedInput("zero vector has no direction")
    denom = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    a, b = int(x * denom), int(y * denom)
    g = gcd(a, b)
    return (a // g, b // g)


def is_primitive(v) -> bool:
    return all(isinstance(c, int) for c in v) and gcd(v[0], v[1]) == 1


def lattice_length(p, q) -> int:
    """Number of lattice points on the segment pq, minus one."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if Fraction(dx).denominator != 1 or Fraction(dy).denominator != 1:
        raise MalformedInput(f"not a lattice segment: {p} -> {q}")
    return gcd(int(dx), int(dy))


def lattice_points_on_segment(p, q) -> List[Tuple[int, int]]:
    n = lattice_length(p, q)
    if n == 0:
        return [tuple(int(c) for c in p)]
    step = (int(q[0] - p[0]) // n, int(q[1] - p[1]) // n)
    return [(int(p[0]) + k * step[0], int(p[1]) + k * step[1]) for k in range(n + 1)]


def convex_hull(points: Iterable) -> list:
    """Counter-clockwise hull by monotone chain; collinear points dropped."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) > 1 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all points collinear: keep the two extremes
        return [pts[0], pts[-1]]
    return hull


def upper_chain(points: Iterable) -> list:
    """Upper hull of (abscissa, value) pairs, left to right, collinear points dropped."""
    out = []
    for p in sorted(points):
        if out and out[-1][0] == p[0]:
            # same abscissa: the higher value wins
            if p[1] <= out[-1][1]:
                continue
            out.pop()
        while len(out) > 1 and cross(out[-2], out[-1], p) >= 0:
            out.pop()
        out.append(p)
    return out


def polygon_area(vertices: Sequence) -> Fraction:
    """Unsigned area by the shoelace formula."""
    n = len(vertices)
    if n < 3:
        return Fraction(0)
    twice = sum(det(vertices[k], vertices[(k + 1) % n]) for k in range(n))
    return abs(Fraction(twice, 2))


def all_collinear(points: Sequence) -> bool:
    pts = list(points)
    if len(pts) < 3:
        return True
    a = pts[0]
    b = next((p for p in pts if p != a), None)
    if b is None:
        return True
    return all(cross(a, b, p) == 0 for p in pts)


def point_in_polygon(p, polygon: Sequence) -> bool:
    """Even-odd rule by a horizontal ray; points on the boundary count as inside."""
    inside = False
    n = len(polygon)
    for k in range(n):
        a, b = polygon[k], polygon[(k + 1) % n]
        if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
        if (a[1] > p[1]) != (b[1] > p[1]):
            x_at = a[0] + Fraction(p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x_at > p[0]:
                inside = not inside
    return inside


@dataclass(frozen=True)
class Piece:
    """
    The set {base + s * direction | lo <= s <= hi}; a bound of None is infinite.
    Bounded edges have both bounds, rays hi=None, full lines both None.
    """
    base: Point
    direction: Vector
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    weight: int = 1

    @property
    def is_bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def at(self, s) -> Point:
        return add(self.base, scale(s, self.direction))

    def contains_param(self, s, strict: bool = False) -> bool:
        if strict:
            return (self.lo is None or s > self.lo) and (self.hi is None or s < self.hi)
        return (self.lo is None or s >= self.lo) and (self.hi is None or s <= self.hi)

    def param_of(self, p) -> Optional[Fraction]:
        """Parameter of p if p lies on the supporting line, else None."""
        d = sub(p, self.base)
        if det(self.direction, d) != 0:
            return None
        return Fraction(dot(d, self.direction), dot(self.direction, self.direction))

    def contains(self, p) -> bool:
        s = self.param_of(p)
        return s is not None and self.contains_param(s)

    def endpoints(self) -> List[Point]:
        return [self.at(s) for s in (self.lo, self.hi) if s is not None]

    def translated(self, v) -> "Piece":
        return Piece(add(self.base, v), self.direction, self.lo, self.hi, self.weight)
