"""
One handler per CLI subcommand: decoded JSON input plus parsed flags in,
a JSON-ready dictionary (and optionally a scene to draw) out.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

from tropica.config import DEFAULT_CONVERGENCE_T, DEQUANT_PRECISION, WINDOW_PAD
from tropica.utils import serialize as wire
from tropica.utils.amoeba import (
    AmoebaGrid,
    convergence_report,
    induced_tropical_polynomial,
    sample_amoeba,
)
from tropica.utils.bipoly import eval_bi, maximizing_monomials
from tropica.utils.curves import check_balancing, curve_from_dual_description, degree, tropical_curve
from tropica.utils.errors import MalformedInput
from tropica.utils.hyper import hyper_eval_uni, is_hyper_root, line_graph_with_tail
from tropica.utils.intersect import (
    bezout_check,
    intersections_after_translation,
    stable_intersections,
    transverse_intersections,
    union_curve,
)
from tropica.utils.numbers import Sign, dequant_add, dequant_bounds
from tropica.utils.patchwork import (
    arrangement_stats,
    build_real_curve,
    patchwork_enumerate,
    patchwork_validate,
    survivors_from_signs,
)
from tropica.utils.render import Scene, amoeba_scene, curve_scene, patchwork_scene, subdivision_scene
from tropica.utils.subdivision import dual_subdivision, subdivision_from_cells
from tropica.utils.univariate import eval_uni, factor_uni, maximizing_exponents, roots_uni


@dataclass
class Result:
    payload: Dict
    scene_builder: Optional[Callable[..., Scene]] = None


HANDLERS: Dict[str, Callable] = {}


def handler(name: str):
    """Register a function as the handler of subcommand `name`."""
    def register(fn):
        HANDLERS[name] = fn
        return fn
    return register


# --- input helpers ---

def _field(data, key, default=None):
    if isinstance(data, dict) and key in data:
        return data[key]
    return default


def _uni(data):
    return wire.uni_from_json(_field(data, "poly", data))


def _bi(data):
    return wire.bi_from_json(_field(data, "poly", data))


def _curve(data):
    """A curve document (output of `curve`) or a bivariate polynomial."""
    if isinstance(data, dict) and "vertices" in data:
        return wire.curve_from_json(data)
    if isinstance(data, dict) and "curve" in data:
        return _curve(data["curve"])
    return tropical_curve(_bi(data))


def _pair(data):
    polys = _field(data, "polys")
    if not isinstance(polys, list) or len(polys) not in (1, 2):
        raise MalformedInput("expected \"polys\": [P1, P2] (or [P] to intersect P with itself)")
    P1 = wire.bi_from_json(polys[0])
    return P1, wire.bi_from_json(polys[-1])


def _t(args, data, default=None):
    value = args.t if getattr(args, "t", None) is not None else _field(data, "t", default)
    if value is None:
        raise MalformedInput("a base t is required (--t VALUE)")
    return value


# --- univariate ---

@handler("eval")
def handle_eval(data, args) -> Result:
    poly = _field(data, "poly", data)
    at = _field(data, "at")
    if at is None:
        raise MalformedInput("missing field 'at'")
    if isinstance(poly, str) and "y" not in poly or isinstance(poly, dict) and poly.get("vars") == 1:
        P = wire.uni_from_json(poly)
        x = wire.number_from_json(at)
        return Result({"value": str(eval_uni(P, x)), "maximizers": maximizing_exponents(P, x)})
    P = wire.bi_from_json(poly)
    pt = wire.point_from_json(at)
    return Result({"value": str(eval_bi(P, pt)),
                   "maximizers": [list(e) for e in maximizing_monomials(P, pt)]})


@handler("roots")
def handle_roots(data, args) -> Result:
    return Result({"roots": wire.roots_to_json(roots_uni(_uni(data)))})


@handler("factor")
def handle_factor(data, args) -> Result:
    P = _uni(data)
    leading, roots = factor_uni(P)
    return Result({"leading": str(leading), "roots": wire.roots_to_json(roots)})


@handler("hyper")
def handle_hyper(data, args) -> Result:
    P = _uni(data)
    x = wire.number_from_json(_field(data, "at", "0"))
    return Result({"value": wire.downset_to_json(hyper_eval_uni(P, x)), "is_root": is_hyper_root(P, x)})


@handler("dequant")
def handle_dequant(data, args) -> Result:
    x, y = (wire.number_from_json(_field(data, k, "-inf")) for k in ("x", "y"))
    t = _t(args, data)
    precision = args.precision or DEQUANT_PRECISION
    value = dequant_add(x, y, t, precision)
    low, high = dequant_bounds(x, y, t, precision)
    return Result({"value": str(value), "lower": str(low), "upper": str(high),
                   "gap": str(high - low) if low.is_finite() else "0", "precision": precision})


# --- curves ---

@handler("curve")
def handle_curve(data, args) -> Result:
    C = tropical_curve(_bi(data))
    return Result({**wire.curve_to_json(C), "degree": wire.degree_to_json(degree(C))},
                  lambda spec: curve_scene(C, spec))


@handler("dual")
def handle_dual(data, args) -> Result:
    S = dual_subdivision(_bi(data))
    return Result(wire.subdivision_to_json(S), lambda spec: subdivision_scene(S, spec))


@handler("balance")
def handle_balance(data, args) -> Result:
    C = _curve(data)
    return Result({**wire.balancing_to_json(check_balancing(C)), "degree": wire.degree_to_json(degree(C))})


@handler("tail")
def handle_tail(data, args) -> Result:
    a, b = (wire.number_from_json(_field(data, k)) for k in ("a", "b"))
    C = line_graph_with_tail(a, b)
    return Result(wire.curve_to_json(C), lambda spec: curve_scene(C, spec))


@handler("reconstruct")
def handle_reconstruct(data, args) -> Result:
    """Curve from a dual subdivision, the position of one vertex and, if regular, the heights."""
    sub = _field(data, "subdivision")
    if not isinstance(sub, dict):
        raise MalformedInput("\"subdivision\" must be an object with \"cells\" (and optionally \"heights\")")
    if "newton_polygon" in sub:
        S = wire.subdivision_from_json(sub)
    else:
        cells, heights = sub.get("cells", []), sub.get("heights")
        if not (isinstance(cells, list) and all(isinstance(c, list) for c in cells)):
            raise MalformedInput("\"cells\" must be a list of polygons")
        S = subdivision_from_cells(
            [[tuple(p) for p in cell] for cell in cells],
            None if heights is None else {(h["i"], h["j"]): wire.rational_from_json(h["h"]) for h in heights})
    position = wire.point_from_json(_field(data, "position", ["0", "0"]))
    C = curve_from_dual_description(S, position, int(_field(data, "cell", 0)))
    return Result(wire.curve_to_json(C), lambda spec: curve_scene(C, spec))


# --- intersections ---

@handler("union")
def handle_union(data, args) -> Result:
    Q, C = union_curve(*_pair(data))
    return Result({"product": wire.bi_to_json(Q), "curve": wire.curve_to_json(C)},
                  lambda spec: curve_scene(C, spec))


@handler("intersect")
def handle_intersect(data, args) -> Result:
    P1, P2 = _pair(data)
    C1, C2 = tropical_curve(P1), tropical_curve(P2)
    offset = _field(data, "offset")
    if offset is not None:
        points = intersections_after_translation(C1, C2, wire.point_from_json(offset))
    else:
        points = transverse_intersections(C1, C2)
    return Result(wire.intersections_to_json(points))


@handler("stable")
def handle_stable(data, args) -> Result:
    P1, P2 = _pair(data)
    direction = _field(data, "direction")
    v = None if direction is None else wire.direction_from_json(direction)
    points = stable_intersections(tropical_curve(P1), tropical_curve(P2), v)
    return Result(wire.intersections_to_json(points))


@handler("bezout")
def handle_bezout(data, args) -> Result:
    return Result(wire.bezout_to_json(bezout_check(*_pair(data))))


# --- patchworks ---

def _survivors(data, C):
    if _field(data, "signs") is not None:
        signs = {}
        for s in data["signs"]:
            try:
                signs[(int(s["i"]), int(s["j"]))] = Sign.PLUS if s["sign"] in ("+", 1) else Sign.MINUS
            except (KeyError, TypeError, ValueError) as e:
                raise MalformedInput(f"bad sign entry {s!r}") from e
        return survivors_from_signs(C, signs)
    survivors = _field(data, "survivors")
    if survivors is None:
        raise MalformedInput("expected \"survivors\" or \"signs\"")
    return wire.survivors_from_json(survivors)


@handler("patchwork validate")
def handle_patchwork_validate(data, args) -> Result:
    C = _curve(data)
    survivors = _survivors(data, C)
    report = patchwork_validate(C, survivors)
    builder = (lambda spec: patchwork_scene(build_real_curve(C, survivors), spec)) if report.ok else None
    return Result(wire.validation_to_json(report), builder)


@handler("patchwork enumerate")
def handle_patchwork_enumerate(data, args) -> Result:
    C = _curve(data)
    found = patchwork_enumerate(C, args.limit) if args.limit else patchwork_enumerate(C)
    return Result({"count": len(found),
                   "patchworks": [wire.survivors_to_json(R.survivor_map()) for R in found]},
                  (lambda spec: patchwork_scene(found[0], spec)) if found else None)


@handler("patchwork stats")
def handle_patchwork_stats(data, args) -> Result:
    C = _curve(data)
    survivors = _survivors(data, C)
    report = patchwork_validate(C, survivors)
    if not report.ok:
        return Result({"valid": False, **wire.validation_to_json(report)})
    R = build_real_curve(C, survivors)
    return Result({"valid": True, **wire.stats_to_json(arrangement_stats(R))},
                  lambda spec: patchwork_scene(R, spec))


# --- amoebas ---

def _grid(args, window=None) -> AmoebaGrid:
    if args.grid is None:
        return AmoebaGrid(window=window)
    moduli, phases = args.grid
    return AmoebaGrid(moduli, phases, window)


@handler("amoeba sample")
def handle_amoeba_sample(data, args) -> Result:
    F = wire.family_from_json(data)
    sample = sample_amoeba(F, _t(args, data), _grid(args))
    curve = tropical_curve(induced_tropical_polynomial(F))
    box = curve.bounding_box()
    y0, y1 = (float(box[1]) - WINDOW_PAD, float(box[3]) + WINDOW_PAD) if box else sample.window
    window = (sample.window[0], y0, sample.window[1], y1)
    return Result(wire.sample_to_json(sample),
                  lambda spec: amoeba_scene(sample.points, curve, window, spec))


@handler("amoeba converge")
def handle_amoeba_converge(data, args) -> Result:
    F = wire.family_from_json(data)
    ts = _t(args, data, DEFAULT_CONVERGENCE_T)
    if isinstance(ts, str):
        ts = [t for t in ts.split(",") if t]
    elif not isinstance(ts, list):
        ts = [ts]
    report = convergence_report(F, ts, _grid(args))
    return Result(wire.convergence_to_json(report))
