"""
JSON codecs for every value the CLI reads or writes, and the short text
notation for polynomials used in docs and tests ("1/2+2x+(-5)y").

Rationals travel as strings ("-3/2"), -inf as "-inf".
"""

import math
import re
from fractions import Fraction
from typing import Dict, List

from tropica.config import SCHEMA
from tropica.utils.amoeba import AmoebaSample, CoefficientFamily, ConvergenceReport
from tropica.utils.bipoly import BiPoly
from tropica.utils.curves import BalancingReport, CurveEdge, CurveLine, CurveRay, DegreeReport, TropicalCurve
from tropica.utils.errors import MalformedInput
from tropica.utils.intersect import BezoutReport, IntersectionPoint
from tropica.utils.numbers import DownSet, TropicalNumber, tropical
from tropica.utils.patchwork import ArrangementStats, ValidationReport
from tropica.utils.subdivision import Cell, DualEdge, DualSubdivision
from tropica.utils.univariate import Root, UniPoly


def envelope(payload: Dict) -> Dict:
    return {"schema": SCHEMA, **payload}


# --- numbers ---

def number_to_json(x: TropicalNumber) -> str:
    return str(x)


def number_from_json(value) -> TropicalNumber:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise MalformedInput(f"numbers are written as strings or integers, got {value!r}")
    return tropical(value)


def rational_from_json(value) -> Fraction:
    x = number_from_json(value)
    if x.is_bottom:
        raise MalformedInput("expected a finite rational, got -inf")
    return x.value


def point_to_json(p) -> List[str]:
    return [str(Fraction(p[0])), str(Fraction(p[1]))]


def point_from_json(value):
    try:
        x, y = value
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"expected a pair, got {value!r}") from e
    return (rational_from_json(x), rational_from_json(y))


def _lattice_from_json(value):
    try:
        i, j = value
        if isinstance(i, bool) or isinstance(j, bool):
            raise TypeError
        return (int(i), int(j))
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"expected an integer pair, got {value!r}") from e


def direction_from_json(value):
    return tuple(int(c) for c in _lattice_from_json(value))


def _require(data: Dict, key: str):
    if not isinstance(data, dict) or key not in data:
        raise MalformedInput(f"missing field {key!r}")
    return data[key]


# --- text notation ---

_TRANSLATE = str.maketrans({"²": "^2", "³": "^3", "⁴": "^4", "⁵": "^5", "⁶": "^6",
                            "−": "-", "∞": "inf", "*": None, "·": None, " ": None})
_TERM = re.compile(r"^(?:\((?P<paren>[^()]*)\)|(?P<plain>-?(?:\d+(?:/\d+|\.\d+)?|inf)))?"
                   r"(?P<mono>(?:[a-z](?:\^\d+)?)*)$")
_FACTOR = re.compile(r"([a-z])(?:\^(\d+))?")


def _split_terms(text: str) -> List[str]:
    parts, depth, current = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    parts.append(current)
    return parts


def parse_terms(text: str, variables: str) -> List:
    """Terms of a polynomial written like "3+2x+(-1)x^2y"; a missing coefficient is 0."""
    out = []
    for term in _split_terms(text.translate(_TRANSLATE)):
        match = _TERM.match(term)
        if not term or not match:
            raise MalformedInput(f"cannot read term {term!r} of {text!r}")
        coeff = match.group("paren") or match.group("plain") or "0"
        powers = dict.fromkeys(variables, 0)
        for var, exp in _FACTOR.findall(match.group("mono")):
            if var not in powers:
                raise MalformedInput(f"unknown variable {var!r} in {text!r}")
            powers[var] += int(exp) if exp else 1
        exponent = tuple(powers[v] for v in variables)
        out.append((exponent if len(variables) > 1 else exponent[0], number_from_json(coeff)))
    return out


def parse_uni(text: str) -> UniPoly:
    return UniPoly.from_terms(parse_terms(text, "x"))


def parse_bi(text: str) -> BiPoly:
    return BiPoly.from_terms(parse_terms(text, "xy"))


# --- polynomials ---

def uni_to_json(P: UniPoly) -> Dict:
    return {"vars": 1, "terms": [{"i": i, "coeff": str(a)} for i, a in P.terms]}


def uni_from_json(data) -> UniPoly:
    if isinstance(data, str):
        return parse_uni(data)
    if _require(data, "vars") != 1:
        raise MalformedInput("expected a univariate polynomial (\"vars\": 1)")
    terms = _require(data, "terms")
    try:
        return UniPoly.from_terms([(t["i"], number_from_json(t["coeff"])) for t in terms])
    except (KeyError, TypeError) as e:
        raise MalformedInput(f"bad univariate term list: {e}") from e


def bi_to_json(P: BiPoly) -> Dict:
    return {"vars": 2, "terms": [{"i": i, "j": j, "coeff": str(a)} for (i, j), a in P.terms]}


def bi_from_json(data) -> BiPoly:
    if isinstance(data, str):
        return parse_bi(data)
    if _require(data, "vars") != 2:
        raise MalformedInput("expected a bivariate polynomial (\"vars\": 2)")
    terms = _require(data, "terms")
    try:
        return BiPoly.from_terms([((t["i"], t["j"]), number_from_json(t["coeff"])) for t in terms])
    except (KeyError, TypeError) as e:
        raise MalformedInput(f"bad bivariate term list: {e}") from e


def roots_to_json(roots: List[Root]) -> List[Dict]:
    return [{"root": str(r.root), "order": r.order} for r in roots]


def roots_from_json(data) -> List[Root]:
    try:
        return [Root(number_from_json(r["root"]), int(r["order"])) for r in data]
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"bad root list: {e}") from e


def downset_to_json(S: DownSet) -> Dict:
    key = "upper" if S.is_ray else "value"
    return {"kind": S.kind, key: str(S.bound), "contains_bottom": S.contains(TropicalNumber(None))}


# --- subdivisions and curves ---

def _dual_to_json(dual):
    return None if dual is None else [list(dual[0]), list(dual[1])]


def _dual_from_json(value):
    return None if value is None else (_lattice_from_json(value[0]), _lattice_from_json(value[1]))


def subdivision_to_json(S: DualSubdivision) -> Dict:
    return {
        "newton_polygon": [list(p) for p in S.newton_polygon],
        "support": [list(p) for p in S.support],
        "heights": None if S.heights is None else
        [{"i": p[0], "j": p[1], "h": str(h)} for p, h in S.heights],
        "cells": [{"vertices": [list(p) for p in c.vertices],
                   "points": [list(p) for p in c.points],
                   "area": str(c.area)} for c in S.cells],
        "edges": [{"endpoints": [list(p) for p in e.endpoints],
                   "cells": list(e.cells), "weight": e.weight} for e in S.edges],
        "degenerate": S.degenerate,
    }


def subdivision_from_json(data: Dict) -> DualSubdivision:
    try:
        heights = data.get("heights")
        return DualSubdivision(
            newton_polygon=tuple(_lattice_from_json(p) for p in data["newton_polygon"]),
            support=tuple(_lattice_from_json(p) for p in data["support"]),
            heights=None if heights is None else tuple(
                ((int(h["i"]), int(h["j"])), rational_from_json(h["h"])) for h in heights),
            cells=tuple(Cell(tuple(_lattice_from_json(p) for p in c["vertices"]),
                             tuple(_lattice_from_json(p) for p in c["points"]),
                             rational_from_json(c["area"])) for c in data["cells"]),
            edges=tuple(DualEdge(tuple(_lattice_from_json(p) for p in e["endpoints"]),
                                 tuple(int(k) for k in e["cells"]), int(e["weight"])) for e in data["edges"]),
            degenerate=bool(data.get("degenerate", False)),
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise MalformedInput(f"bad subdivision: {e}") from e


def curve_to_json(C: TropicalCurve, with_subdivision: bool = True) -> Dict:
    out = {
        "vertices": [point_to_json(p) for p in C.vertices],
        "edges": [{"start": e.start, "end": e.end, "weight": e.weight,
                   "direction": list(e.direction), "dual": _dual_to_json(e.dual)} for e in C.edges],
        "rays": [{"base": r.base, "direction": list(r.direction), "weight": r.weight,
                  "dual": _dual_to_json(r.dual)} for r in C.rays],
        "lines": [{"base": point_to_json(line.base), "direction": list(line.direction),
                   "weight": line.weight, "dual": _dual_to_json(line.dual)} for line in C.lines],
        "vertex_cells": list(C.vertex_cells),
    }
    if with_subdivision and C.subdivision is not None:
        out["subdivision"] = subdivision_to_json(C.subdivision)
    return out


def curve_from_json(data: Dict) -> TropicalCurve:
    """Any weighted graph in curve layout; directions are not validated here (see check_balancing)."""
    try:
        sub = data.get("subdivision")
        vertices = tuple(point_from_json(p) for p in data.get("vertices", []))
        return TropicalCurve(
            vertices=vertices,
            edges=tuple(CurveEdge(int(e["start"]), int(e["end"]), int(e.get("weight", 1)),
                                  direction_from_json(e["direction"]), _dual_from_json(e.get("dual")))
                        for e in data.get("edges", [])),
            rays=tuple(CurveRay(int(r["base"]), direction_from_json(r["direction"]), int(r.get("weight", 1)),
                                _dual_from_json(r.get("dual")))
                       for r in data.get("rays", [])),
            lines=tuple(CurveLine(point_from_json(line["base"]), direction_from_json(line["direction"]),
                                  int(line.get("weight", 1)), _dual_from_json(line.get("dual")))
                        for line in data.get("lines", [])),
            vertex_cells=tuple(int(k) for k in data.get("vertex_cells", [])),
            subdivision=None if sub is None else subdivision_from_json(sub),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise MalformedInput(f"bad curve: {e}") from e


def degree_to_json(report: DegreeReport) -> Dict:
    return {"degree": report.degree, "standard_support": report.standard_support,
            "direction_sums": [{"direction": list(d), "weight": w} for d, w in report.direction_sums.items()]}


def balancing_to_json(report: BalancingReport) -> Dict:
    return {"ok": report.ok,
            "violations": [{"vertex": v, "residual": point_to_json(r)} for v, r in report.violations]}


# --- intersections ---

def _label(label) -> str:
    return f"{label[0]}:{label[1]}"


def intersection_to_json(p: IntersectionPoint) -> Dict:
    return {"x": str(p.point[0]), "y": str(p.point[1]), "mult": p.multiplicity, "kind": p.kind,
            "witnesses": [[_label(a), _label(b)] for a, b in p.witnesses]}


def intersections_to_json(points: List[IntersectionPoint]) -> Dict:
    return {"points": [intersection_to_json(p) for p in points],
            "total": sum(p.multiplicity for p in points)}


def bezout_to_json(report: BezoutReport) -> Dict:
    return {**intersections_to_json(report.points), "d1": report.d1, "d2": report.d2,
            "bezout_ok": report.ok}


# --- patchworks ---

def survivors_to_json(survivors: Dict) -> List[Dict]:
    return [{"edge": k, "quadrants": [list(q) for q in sorted(qs)]} for k, qs in sorted(survivors.items())]


def survivors_from_json(data) -> Dict[int, List]:
    try:
        out = {}
        for entry in data:
            edge = entry["edge"]
            if isinstance(edge, bool) or not isinstance(edge, int):
                raise MalformedInput(f"edge id must be an integer, got {edge!r}")
            out.setdefault(edge, []).extend(direction_from_json(q) for q in entry["quadrants"])
        return out
    except (KeyError, TypeError) as e:
        raise MalformedInput(f"bad survivor list: {e}") from e


def validation_to_json(report: ValidationReport) -> Dict:
    return {"ok": report.ok, "violations": [
        {k: (list(v) if isinstance(v, tuple) else v)
         for k, v in vars(violation).items() if v is not None}
        for violation in report.violations]}


def stats_to_json(stats: ArrangementStats) -> Dict:
    return {
        "components": stats.component_count,
        "bounded": stats.bounded_count,
        "unbounded": stats.unbounded_count,
        "nesting": [{"component": k, "parent": p} for k, p in stats.nesting],
        "details": [{"component": c.index, "bounded": c.bounded, "ends": c.ends,
                     "quadrants": [list(q) for q in c.quadrants]} for c in stats.components],
    }


# --- amoebas ---

def family_from_json(data: Dict) -> CoefficientFamily:
    try:
        terms = {}
        for t in _require(data, "terms"):
            series = [(rational_from_json(s["r"]), (rational_from_json(s["beta"][0]),
                                                    rational_from_json(s["beta"][1])))
                      for s in t["series"]]
            terms.setdefault((int(t["i"]), int(t["j"])), []).extend(series)
        return CoefficientFamily.from_terms(terms)
    except (KeyError, TypeError, IndexError) as e:
        raise MalformedInput(f"bad coefficient family: {e}") from e


def family_to_json(F: CoefficientFamily) -> Dict:
    return {"terms": [{"i": i, "j": j, "series": [{"r": str(s.r), "beta": [str(s.beta[0]), str(s.beta[1])]}
                                                  for s in series]}
                      for (i, j), series in F.terms]}


def sample_to_json(sample: AmoebaSample) -> Dict:
    return {"t": sample.t, "window": list(sample.window),
            "grid": {"moduli": sample.grid.moduli, "phases": sample.grid.phases},
            "residual_tol": sample.residual_tol, "discarded": sample.discarded,
            "points": [[round(float(a), 12), round(float(b), 12)] for a, b in sample.points]}


def _finite_or_none(value: float):
    return None if math.isnan(value) else value


def convergence_to_json(report: ConvergenceReport) -> Dict:
    return {"t": report.t_values,
            "dev": [_finite_or_none(d) for d in report.deviation],
            "cov": [_finite_or_none(c) for c in report.coverage],
            "strictly_decreasing": report.strictly_decreasing,
            "rate_constant": _finite_or_none(report.rate_constant),
            "window": list(report.window), "samples": report.samples, "note": report.note}
