"""
Amoebas of coefficient families P_t(x, y) = sum alpha_ij(t) x^i y^j with
alpha_ij(t) = sum_r beta_ijr t^r, and how fast their Log_t images approach
the tropical curve of max_r r + i X + j Y.

This is the only floating point part of the package besides dequant_add.
Sampling solves P_t(x, .) = 0 in closed form, so the degree in y is at most 2.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import KDTree

from tropica.config import (
    COVERAGE_STEP,
    DEFAULT_MODULI,
    DEFAULT_PHASES,
    RESIDUAL_TOL,
    WINDOW_PAD,
    ZERO_ROOT_TOL,
)
from tropica.utils.bipoly import BiPoly
from tropica.utils.curves import TropicalCurve, tropical_curve
from tropica.utils.errors import EmptyCurve, InvalidBase, MalformedInput, UnsupportedDegree, ZeroCoordinate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesTerm:
    r: Fraction
    beta: Tuple[Fraction, Fraction]     # real and imaginary part

    @property
    def complex_beta(self) -> complex:
        return complex(float(self.beta[0]), float(self.beta[1]))


@dataclass(frozen=True)
class CoefficientFamily:
    terms: Tuple[Tuple[Tuple[int, int], Tuple[SeriesTerm, ...]], ...]

    @classmethod
    def from_terms(cls, terms: Dict) -> "CoefficientFamily":
        """{(i, j): [(r, (re, im)), ...]}; the term of largest r must have beta != 0."""
        built = []
        for (i, j), series in sorted(terms.items()):
            if i < 0 or j < 0:
                raise MalformedInput(f"negative exponent {(i, j)}")
            series = tuple(SeriesTerm(Fraction(r), (Fraction(b[0]), Fraction(b[1]))) for r, b in series)
            if not series:
                raise MalformedInput(f"empty series for monomial {(i, j)}")
            top = max(series, key=lambda s: s.r)
            if top.beta == (0, 0):
                raise MalformedInput(f"top coefficient of monomial {(i, j)} vanishes")
            built.append(((i, j), series))
        if not built:
            raise MalformedInput("family has no monomials")
        return cls(tuple(built))

    @classmethod
    def constant(cls, coefficients: Dict) -> "CoefficientFamily":
        """Family independent of t: alpha_ij = beta_ij."""
        return cls.from_terms({e: [(0, (Fraction(c), 0))] for e, c in coefficients.items()})

    @property
    def y_degree(self) -> int:
        return max(j for (_, j), _ in self.terms)


def induced_tropical_polynomial(F: CoefficientFamily) -> BiPoly:
    """a_ij = the largest exponent r of the series of monomial (i, j)."""
    return BiPoly.from_terms({e: max(s.r for s in series) for e, series in F.terms})


def evaluate_family(F: CoefficientFamily, t: float) -> Dict[Tuple[int, int], complex]:
    t = _check_base(t)
    return {e: sum(s.complex_beta * t ** float(s.r) for s in series) for e, series in F.terms}


def _check_base(t) -> float:
    try:
        t = float(Fraction(t)) if isinstance(t, (str, Fraction)) else float(t)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"base must be a number, got {t!r}") from e
    if not t > 1:
        raise InvalidBase(f"amoeba base must exceed 1, got {t}", t=t)
    return t


def log_map(points: Sequence, t) -> List[Tuple[float, float]]:
    """(x, y) -> (log_t |x|, log_t |y|) for points of (C*)^2."""
    t = _check_base(t)
    arr = np.asarray(points, dtype=complex).reshape(-1, 2)
    if np.any(np.abs(arr) == 0):
        raise ZeroCoordinate("log_map is defined only away from the coordinate axes")
    logs = np.log(np.abs(arr)) / math.log(t)
    return [(float(a), float(b)) for a, b in logs]


@dataclass(frozen=True)
class AmoebaGrid:
    moduli: int = DEFAULT_MODULI
    phases: int = DEFAULT_PHASES
    window: Optional[Tuple[float, float]] = None     # range of u in |x| = t^u


@dataclass
class AmoebaSample:
    t: float
    points: np.ndarray                  # (n, 2) array of (log_t|x|, log_t|y|)
    grid: AmoebaGrid
    window: Tuple[float, float]
    residual_tol: float = RESIDUAL_TOL
    discarded: Dict[str, int] = field(default_factory=dict)


def _default_window(curve: TropicalCurve) -> Tuple[float, float]:
    box = curve.bounding_box()
    if box is None:
        return -float(WINDOW_PAD), float(WINDOW_PAD)
    return float(box[0]) - WINDOW_PAD, float(box[2]) + WINDOW_PAD


def _y_roots(coeffs: List[np.ndarray]) -> List[np.ndarray]:
    """Roots in y of c0 + c1 y (+ c2 y^2), elementwise; the quadratic uses the cancellation-free formula."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if len(coeffs) == 2:
            c0, c1 = coeffs
            return [-c0 / c1]
        c0, c1, c2 = coeffs
        disc = np.sqrt(c1 * c1 - 4 * c2 * c0)
        sign = np.where((np.conj(c1) * disc).real >= 0, 1.0, -1.0)
        q = -(c1 + sign * disc) / 2
        return [q / c2, c0 / q]


def sample_amoeba(F: CoefficientFamily, t, grid: AmoebaGrid = AmoebaGrid()) -> AmoebaSample:
    """
    Points of Log_t of the zero set of P_t over a log-radial grid of x values:
    |x| = t^u for u evenly spread over the window, with evenly spread phases.
    """
    t = _check_base(t)
    dy = F.y_degree
    if dy > 2 or dy == 0:
        raise UnsupportedDegree(f"sampling solves for y and needs degree 1 or 2 in y, got {dy}", y_degree=dy)
    window = grid.window or _default_window(tropical_curve(induced_tropical_polynomial(F)))

    u = np.linspace(window[0], window[1], grid.moduli)
    theta = 2 * np.pi * np.arange(grid.phases) / grid.phases
    x = (t ** u[:, None] * np.exp(1j * theta[None, :])).ravel()

    alpha = evaluate_family(F, t)
    coeffs = [sum((a * x ** i for (i, j), a in alpha.items() if j == k), np.zeros_like(x)) for k in range(dy + 1)]
    discarded = {"zero": 0, "non_finite": 0, "residual": 0}
    kept_x, kept_y = [], []
    for y in _y_roots(coeffs):
        finite = np.isfinite(y)
        discarded["non_finite"] += int(np.count_nonzero(~finite))
        nonzero = finite & (np.abs(np.where(finite, y, 0)) > ZERO_ROOT_TOL)
        discarded["zero"] += int(np.count_nonzero(finite & ~nonzero))
        xs, ys = x[nonzero], y[nonzero]
        monomials = [a * xs ** i * ys ** j for (i, j), a in alpha.items()]
        scale = 1 + np.max(np.abs(np.array(monomials)), axis=0)
        good = np.abs(sum(monomials)) / scale < RESIDUAL_TOL
        discarded["residual"] += int(np.count_nonzero(~good))
        kept_x.append(xs[good])
        kept_y.append(ys[good])

    xs, ys = np.concatenate(kept_x), np.concatenate(kept_y)
    points = np.column_stack([np.log(np.abs(xs)), np.log(np.abs(ys))]) / math.log(t)
    points = points[np.lexsort((points[:, 1], points[:, 0]))]
    logger.info("✓ amoeba at t=%g: %d points (%s discarded)", t, len(points), discarded)
    return AmoebaSample(t, points, grid, window, RESIDUAL_TOL, discarded)


# --- distances to the tropical limit ---

def _piece_arrays(curve: TropicalCurve):
    out = []
    for _, piece in curve.pieces():
        base = np.array([float(piece.base[0]), float(piece.base[1])])
        d = np.array([float(piece.direction[0]), float(piece.direction[1])])
        lo = -np.inf if piece.lo is None else float(piece.lo)
        hi = np.inf if piece.hi is None else float(piece.hi)
        out.append((base, d, lo, hi))
    return out


def distance_to_curve(points: np.ndarray, curve: TropicalCurve) -> np.ndarray:
    """Euclidean distance from each point to the nearest edge, ray or line."""
    best = np.full(len(points), np.inf)
    for base, d, lo, hi in _piece_arrays(curve):
        s = np.clip((points - base) @ d / (d @ d), lo, hi)
        nearest = base + s[:, None] * d
        best = np.minimum(best, np.linalg.norm(points - nearest, axis=1))
    return best


def curve_net(curve: TropicalCurve, box: Tuple[float, float, float, float],
              step: float = COVERAGE_STEP) -> np.ndarray:
    """Points spaced `step` apart along the part of the curve inside box = (x0, y0, x1, y1)."""
    x0, y0, x1, y1 = box
    net = []
    for base, d, lo, hi in _piece_arrays(curve):
        s_lo, s_hi = lo, hi
        for axis, (a, b) in enumerate(((x0, x1), (y0, y1))):
            if d[axis] == 0:
                if not a <= base[axis] <= b:
                    s_lo, s_hi = 1.0, 0.0
                continue
            ends = sorted(((a - base[axis]) / d[axis], (b - base[axis]) / d[axis]))
            s_lo, s_hi = max(s_lo, ends[0]), min(s_hi, ends[1])
        if s_lo > s_hi:
            continue
        s = np.append(np.arange(s_lo, s_hi, step / np.linalg.norm(d)), s_hi)
        net.append(base + s[:, None] * d)
    return np.concatenate(net) if net else np.empty((0, 2))


@dataclass
class ConvergenceReport:
    t_values: List[float]
    deviation: List[float]
    coverage: List[float]
    strictly_decreasing: bool
    rate_constant: float
    window: Tuple[float, float, float, float]
    samples: List[int]
    note: str = ("distances are measured inside the sampling window; the rate constant C is an "
                 "empirical fit of deviation(t) <= C / ln t")


def convergence_report(F: CoefficientFamily, t_values: Sequence, grid: AmoebaGrid = AmoebaGrid()) -> ConvergenceReport:
    """
    For each t, the largest distance from an amoeba sample to the tropical
    curve (deviation) and the largest distance from a point of the curve in
    the window to the nearest sample (coverage gap).
    """
    curve = tropical_curve(induced_tropical_polynomial(F))
    if curve.is_empty:
        raise EmptyCurve("the induced tropical polynomial has a single monomial; its curve is empty "
                         "and there is nothing to converge to")
    u_window = grid.window or _default_window(curve)
    box = curve.bounding_box()
    box = (u_window[0], float(box[1]) - WINDOW_PAD, u_window[1], float(box[3]) + WINDOW_PAD)
    net = curve_net(curve, box)

    ts, devs, covs, counts = [], [], [], []
    for t in t_values:
        sample = sample_amoeba(F, t, AmoebaGrid(grid.moduli, grid.phases, u_window))
        pts = sample.points
        devs.append(float(distance_to_curve(pts, curve).max()) if len(pts) else float("nan"))
        if len(pts) and len(net):
            gaps, _ = KDTree(pts).query(net)
            covs.append(float(gaps.max()))
        else:
            covs.append(float("nan"))
        ts.append(sample.t)
        counts.append(len(pts))

    decreasing = all(b < a for a, b in zip(devs, devs[1:]))
    scaled = [d * math.log(t) for d, t in zip(devs, ts) if not math.isnan(d)]
    rate = max(scaled) if scaled else float("nan")
    logger.info("✓ convergence: deviation %s, decreasing=%s, C=%.4g", devs, decreasing, rate)
    return ConvergenceReport(ts, devs, covs, decreasing, rate, box, counts)
