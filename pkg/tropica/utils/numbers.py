"""
Tropical semi-field arithmetic over exact rationals.

T = Q u {-inf} with "x + y" = max(x, y) and "x * y" = x + y. Also holds the
tropical and sign hyperfields and Maslov's dequantised addition, the only
inexact operation in the package.
"""

import logging
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import IntEnum
from fractions import Fraction
from functools import reduce, total_ordering
from typing import Iterable, Optional

from tropica.config import DEQUANT_GUARD_DIGITS, DEQUANT_PRECISION
from tropica.utils.errors import DomainError, InvalidBase, MalformedInput

logger = logging.getLogger(__name__)

BOTTOM_LITERALS = {"-inf", "-infinity", "−∞", "-∞"}


@total_ordering
@dataclass(frozen=True)
class TropicalNumber:
    """
    Element of T. `value` is None for the bottom element -inf, otherwise an
    exact Fraction. Bottom compares below every rational.
    """
    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.value is None:
            return
        if isinstance(self.value, bool):
            raise MalformedInput(f"not a rational: {self.value!r}")
        try:
            object.__setattr__(self, "value", Fraction(self.value))
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise MalformedInput(f"not a rational: {self.value!r}") from e

    @classmethod
    def parse(cls, text) -> "TropicalNumber":
        """Read "-inf", "p/q", "p" or a decimal literal such as "-1.5"."""
        if isinstance(text, TropicalNumber):
            return text
        if isinstance(text, str) and text.strip().lower() in BOTTOM_LITERALS:
            return BOTTOM
        if isinstance(text, float):
            raise MalformedInput(f"floats are not accepted, quote the number: {text!r}")
        return cls(text)

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __lt__(self, other):
        if not isinstance(other, TropicalNumber):
            return NotImplemented
        if self.value is None:
            return other.value is not None
        if other.value is None:
            return False
        return self.value < other.value

    def __neg__(self):
        if self.value is None:
            raise DomainError("-inf has no multiplicative inverse")
        return TropicalNumber(-self.value)

    def __str__(self):
        return "-inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"TropicalNumber({self})"


BOTTOM = TropicalNumber(None)
TROPICAL_ZERO = BOTTOM              # additive identity
TROPICAL_ONE = TropicalNumber(0)    # multiplicative identity


def tropical(value) -> TropicalNumber:
    """Coerce ints, Fractions, strings and TropicalNumbers."""
    return TropicalNumber.parse(value)


def trop_add(x: TropicalNumber, y: TropicalNumber) -> TropicalNumber:
    return x if x >= y else y


def trop_mul(x: TropicalNumber, y: TropicalNumber) -> TropicalNumber:
    if x.is_bottom or y.is_bottom:
        return BOTTOM
    return TropicalNumber(x.value + y.value)


def trop_pow(x: TropicalNumber, k: int) -> TropicalNumber:
    """k-fold tropical product; x^0 is the multiplicative identity 0, even for -inf."""
    if k < 0:
        raise MalformedInput(f"exponent must be nonnegative, got {k}")
    if k == 0:
        return TROPICAL_ONE
    if x.is_bottom:
        return BOTTOM
    return TropicalNumber(k * x.value)


def trop_inv(x: TropicalNumber) -> TropicalNumber:
    return -x


def trop_sum(values: Iterable[TropicalNumber]) -> TropicalNumber:
    return reduce(trop_add, values, TROPICAL_ZERO)


def trop_prod(values: Iterable[TropicalNumber]) -> TropicalNumber:
    return reduce(trop_mul, values, TROPICAL_ONE)


# --- tropical hyperfield ---

@dataclass(frozen=True)
class DownSet:
    """
    The two shapes a hyperfield sum can take: {value} or {z in T | z <= value}.
    """
    kind: str
    bound: TropicalNumber

    SINGLETON = "singleton"
    CLOSED_RAY = "closed-ray"

    @classmethod
    def singleton(cls, x: TropicalNumber) -> "DownSet":
        return cls(cls.SINGLETON, x)

    @classmethod
    def closed_ray(cls, upper: TropicalNumber) -> "DownSet":
        return cls(cls.CLOSED_RAY, upper)

    @property
    def is_ray(self) -> bool:
        return self.kind == self.CLOSED_RAY

    def contains(self, z: TropicalNumber) -> bool:
        if self.is_ray:
            return z <= self.bound
        return z == self.bound

    def __str__(self):
        if self.is_ray:
            return f"[-inf, {self.bound}]"
        return f"{{{self.bound}}}"


def hyper_add(x: TropicalNumber, y: TropicalNumber) -> DownSet:
    if x == y:
        return DownSet.closed_ray(x)
    return DownSet.singleton(trop_add(x, y))


def hyper_add_set(acc: DownSet, y: TropicalNumber) -> DownSet:
    """
    Union of z + y over all z in `acc`, normalised back to a DownSet.
    A ray {z <= u} absorbs every y <= u; a larger y dominates every member.
    """
    if not acc.is_ray:
        return hyper_add(acc.bound, y)
    if y > acc.bound:
        return DownSet.singleton(y)
    return acc


def hyper_sum(values: Iterable[TropicalNumber]) -> DownSet:
    """Pairwise fold of hyperfield addition; the empty sum is {-inf}."""
    values = list(values)
    if not values:
        return DownSet.singleton(BOTTOM)
    return reduce(hyper_add_set, values[1:], DownSet.singleton(values[0]))


# --- sign hyperfield ---

class Sign(IntEnum):
    ZERO = 0
    PLUS = 1
    MINUS = -1


def sign_mul(s1: Sign, s2: Sign) -> Sign:
    return Sign(int(s1) * int(s2))


def sign_hyper_add(s1: Sign, s2: Sign) -> frozenset:
    if s1 == Sign.ZERO:
        return frozenset({s2})
    if s2 == Sign.ZERO or s1 == s2:
        return frozenset({s1})
    return frozenset(Sign)


def sign_hyper_sum(signs: Iterable[Sign]) -> frozenset:
    result = frozenset({Sign.ZERO})
    for s in signs:
        result = frozenset().union(*(sign_hyper_add(a, s) for a in result))
    return result


# --- Maslov dequantisation ---

def _to_decimal(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def _check_base(t) -> Fraction:
    try:
        t = Fraction(t)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"base must be a rational number, got {t!r}") from e
    if t <= 1:
        raise InvalidBase(f"dequantisation base must exceed 1, got {t}", t=str(t))
    return t


def dequant_add(x, y, t, precision: int = DEQUANT_PRECISION) -> Decimal:
    """
    "x +_t y" = log_t(t^x + t^y), evaluated as max(x,y) + log_t(1 + t^-|x-y|).

    Args:
        x, y: rationals (or finite TropicalNumbers)
        t: rational base, t > 1
        precision: number of decimal places of the returned value

    Returns:
        Decimal in [max(x,y), max(x,y) + log_t 2]
    """
    t = _check_base(t)
    x, y = (v.value if isinstance(v, TropicalNumber) else v for v in (x, y))
    if x is None or y is None:
        # -inf is the additive identity of every "+_t" as well
        finite = y if x is None else x
        if finite is None:
            return Decimal("-Infinity")
        finite = Fraction(finite)
        with localcontext() as ctx:
            ctx.prec = precision + DEQUANT_GUARD_DIGITS + len(str(abs(int(finite))))
            return _to_decimal(finite).quantize(Decimal(1).scaleb(-precision))
    x, y = Fraction(x), Fraction(y)
    high, gap = max(x, y), abs(x - y)
    with localcontext() as ctx:
        ctx.prec = precision + DEQUANT_GUARD_DIGITS + len(str(abs(int(high))))
        ln_t = _to_decimal(t).ln()
        correction = (1 + (-_to_decimal(gap) * ln_t).exp()).ln() / ln_t
        result = (_to_decimal(high) + correction).quantize(Decimal(1).scaleb(-precision))
    logger.debug("dequant_add(%s, %s, t=%s) = %s", x, y, t, result)
    return result


def dequant_bounds(x, y, t, precision: int = DEQUANT_PRECISION):
    """The sandwich max(x,y) <= "x +_t y" <= max(x,y) + log_t 2 as Decimals."""
    t = _check_base(t)
    finite = [Fraction(v.value if isinstance(v, TropicalNumber) else v) for v in (x, y)
              if not (isinstance(v, TropicalNumber) and v.is_bottom)]
    if not finite:
        return Decimal("-Infinity"), Decimal("-Infinity")
    high = max(finite)
    with localcontext() as ctx:
        ctx.prec = precision + DEQUANT_GUARD_DIGITS + len(str(abs(int(high))))
        low = _to_decimal(high)
        return low, low + Decimal(2).ln() / _to_decimal(t).ln()


def dequant_mul(x, y, t) -> Fraction:
    """"x *_t y" = log_t(t^x t^y) = x + y for every base."""
    _check_base(t)
    return Fraction(x) + Fraction(y)
