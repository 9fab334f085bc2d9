"""
Tunable constants for every module.

All defaults live here; the CLI overrides them per call through flags.
Nothing is read from the environment.
"""

from fractions import Fraction

SCHEMA = "tropica/1"

# trop-core
DEQUANT_PRECISION = 30          # correct decimal places returned by dequant_add
DEQUANT_GUARD_DIGITS = 12       # extra working digits inside the decimal context

# patchwork
DEFAULT_ENUMERATION_LIMIT = 64

# amoeba
DEFAULT_MODULI = 129            # odd, so u = 0 is on the grid
DEFAULT_PHASES = 64
WINDOW_PAD = 2                  # log-units added around the curve's bounding box
RESIDUAL_TOL = 1e-10            # |P_t(x,y)| / (1 + max |monomial|)
ZERO_ROOT_TOL = 1e-300          # y-roots at or below this modulus are not in (C*)^2
COVERAGE_STEP = 0.05            # spacing of the net laid on the tropical curve
DEFAULT_CONVERGENCE_T = "2,8,32,128"

# rendering
RAY_CLIP_PADDING = Fraction(1, 5)
MIN_VIEW_SPAN = Fraction(2)     # auto viewport of a one-vertex curve
BASE_STROKE = 1.2
LABEL_MIN_WEIGHT = 2            # weights >= 2 are printed next to the edge
SVG_HASHSALT = "tropica"
FIGURE_SIZE = (6, 6)
