"""p-adic valuations with an explicit +infinity and an Indeterminate marker.

Valuations of nonzero rationals live in (1/(p-1)) * Z once the uniformizer
pi (pi^(p-1) = -p) is in play; they are represented as exact Fractions.
val(0) is the singleton INF.  Computations that cannot certify a valuation
return the singleton INDETERMINATE instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError


class _Infinity:
    """The valuation of zero.  Compares above every Fraction, absorbs +."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "+inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("cannot negate +inf valuation")


class _Indeterminate:
    """Returned when an approximate value cannot certify its valuation."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "indeterminate"


INF = _Infinity()
INDETERMINATE = _Indeterminate()

# A valuation is a Fraction or INF.
ExtRational = object


def is_finite(v) -> bool:
    return v is not INF and v is not INDETERMINATE


def val_min(*vals):
    """Minimum of extended valuations (INF is the neutral element)."""
    best = INF
    for v in vals:
        if v is INF:
            continue
        if best is INF or v < best:
            best = v
    return best


def _prime_check(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime p together with the valuation conventions used everywhere.

    val(p) = 1; the uniformizer pi of Q_p(mu_{p(p-1)}) satisfies
    pi^(p-1) = -p, so val(pi) = 1/(p-1).  pi itself is never materialized;
    all arithmetic happens over Q with valuation bookkeeping.
    """

    p: int

    def __post_init__(self):
        if not _prime_check(self.p) or self.p == 2:
            raise ValidationError(f"need an odd prime, got {self.p}")

    @property
    def pi_val(self) -> Fraction:
        return Fraction(1, self.p - 1)


def _int_val(p: int, n: int) -> int:
    # exact exponent of p in a nonzero integer
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(ctx: PrimeContext, x):
    """Exact p-adic valuation of a rational (Fraction or int); val(0) = INF."""
    if isinstance(x, int):
        if x == 0:
            return INF
        return Fraction(_int_val(ctx.p, x))
    num = x.numerator
    if num == 0:
        return INF
    return Fraction(_int_val(ctx.p, num) - _int_val(ctx.p, x.denominator))
