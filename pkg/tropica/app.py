"""
Command-line entry point.

    python -m tropica curve --input data/examples/line.json --svg line.svg
    echo '{"poly": "0+x^2"}' | python -m tropica roots

JSON goes to standard output, logs and errors to standard error.
Exit codes: 0 success, 1 domain error, 2 malformed input or usage.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

from tropica import __version__
from tropica.api import HANDLERS
from tropica.utils.errors import DomainError, MalformedInput, TropicaError
from tropica.utils.io import load_json
from tropica.utils.render import RenderSpec, render_svg
from tropica.utils.serialize import envelope

logger = logging.getLogger("tropica")

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED = 0, 1, 2

COMMANDS = {
    "eval": "evaluate a tropical polynomial at a point",
    "roots": "roots of a univariate polynomial with their orders",
    "factor": "factor a univariate polynomial into linear factors",
    "curve": "tropical curve of a bivariate polynomial",
    "dual": "dual subdivision of the Newton polygon",
    "balance": "check the balancing condition of a curve",
    "intersect": "transverse intersection points of two curves",
    "stable": "stable intersection of two curves (or a curve with itself)",
    "bezout": "stable intersection count against d1 * d2",
    "union": "curve of the product of two polynomials",
    "dequant": "Maslov dequantised sum log_t(t^x + t^y)",
    "hyper": "hyperfield evaluation of a univariate polynomial",
    "tail": "multivalued graph of y = (a + x) [+] b",
    "reconstruct": "curve from a dual subdivision and one vertex position",
}
GROUPS = {
    "patchwork": {
        "validate": "check a survivor set against the pairing and vertex rules",
        "enumerate": "all valid survivor sets up to --limit",
        "stats": "components, bounded components and nesting of a patchwork",
    },
    "amoeba": {
        "sample": "Log_t image of the zero set of a coefficient family",
        "converge": "deviation and coverage of amoebas against the tropical limit",
    },
}


def _viewport(text):
    try:
        parts = [Fraction(p) for p in text.split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"bad viewport {text!r}") from e
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("viewport is x0,y0,x1,y1")
    return tuple(parts)


def _grid(text):
    try:
        moduli, phases = (int(p) for p in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError("grid is MODULI,PHASES") from e
    if moduli < 2 or phases < 1:
        raise argparse.ArgumentTypeError("grid needs at least 2 moduli and 1 phase")
    return moduli, phases


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="JSON input file, '-' for standard input (default: -)")
    common.add_argument("--svg", help="also write an SVG picture to this path")
    common.add_argument("--viewport", type=_viewport, help="drawing box x0,y0,x1,y1 (default: fitted to the scene)")
    common.add_argument("--t", help="base t > 1 (dequant, amoeba); comma-separated list for amoeba converge")
    common.add_argument("--limit", type=_positive, help="maximum number of patchworks to enumerate")
    common.add_argument("--grid", type=_grid, help="amoeba grid MODULI,PHASES")
    common.add_argument("--precision", type=_positive, help="decimal places for dequant")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="tropica", description="Exact plane tropical geometry toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, text in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    for group, actions in GROUPS.items():
        group_parser = sub.add_parser(group, help=f"{group} subcommands")
        inner = group_parser.add_subparsers(dest="action", metavar="ACTION", required=True)
        for name, text in actions.items():
            inner.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def _fail(error: TropicaError, code: int) -> int:
    print(json.dumps(envelope({"error": error.to_dict()}), default=str), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_MALFORMED if e.code else EXIT_OK
    _configure_logging(args.verbose)

    name = args.command if args.command not in GROUPS else f"{args.command} {args.action}"
    try:
        data = load_json(args.input)
        result = HANDLERS[name](data, args)
        print(json.dumps(envelope(result.payload), indent=2))
        if args.svg:
            if result.scene_builder is None:
                logger.warning("%s has nothing to draw; no SVG written", name)
            else:
                spec = RenderSpec(viewport=args.viewport, output=args.svg)
                render_svg(result.scene_builder(spec), spec)
    except MalformedInput as e:
        return _fail(e, EXIT_MALFORMED)
    except DomainError as e:
        return _fail(e, EXIT_DOMAIN)
    except (KeyError, IndexError, TypeError, AttributeError, ValueError) as e:
        logger.debug("unexpected input shape", exc_info=True)
        return _fail(MalformedInput(f"input has the wrong shape: {type(e).__name__}: {e}"), EXIT_MALFORMED)
    return EXIT_OK
