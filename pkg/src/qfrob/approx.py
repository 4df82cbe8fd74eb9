"""Approximate p-adic numbers with certified error bounds.

An ApproxPadic holds an exact rational `approx` standing in for an unknown
true value, with the guarantee  val(true - approx) >= err  (err = INF means
the value is exact).  All arithmetic propagates the guarantee soundly under
the ultrametric; nothing here ever rounds optimistically.

A valuation is only ever *certified* when val(approx) < err, in which case
val(true) = val(approx) exactly.  val(0) = +inf is never certified.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from .errors import PrecisionError
from .valuation import INDETERMINATE, INF, PrimeContext, val_p

_ZERO = Fraction(0)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class ApproxPadic:
    __slots__ = ("ctx", "approx", "err")

    def __init__(self, ctx: PrimeContext, approx: Fraction, err):
        self.ctx = ctx
        self.approx = approx
        self.err = err

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, ctx: PrimeContext, x) -> "ApproxPadic":
        f = _as_fraction(x)
        if f is None:
            raise TypeError(f"not a rational: {x!r}")
        return cls(ctx, f, INF)

    @classmethod
    def of(cls, ctx: PrimeContext, approx, err) -> "ApproxPadic":
        f = _as_fraction(approx)
        if f is None:
            raise TypeError(f"not a rational: {approx!r}")
        return cls(ctx, f, err)._maybe_reduce()

    # -- certified data ------------------------------------------------

    def certified_val(self):
        """val(true) when provable from the bound, else INDETERMINATE."""
        v = val_p(self.ctx, self.approx)
        if v < self.err:
            return v
        if self.err is INF:
            return v  # exact value, even when zero
        return INDETERMINATE

    def is_exact(self) -> bool:
        return self.err is INF

    # -- size control --------------------------------------------------

    def _maybe_reduce(self) -> "ApproxPadic":
        # Replace approx by a congruent small representative mod p^ceil(err-v).
        # Sound: val(new - old) >= err keeps the guarantee intact.
        if self.err is INF:
            return self
        a = self.approx
        size = a.numerator.bit_length() + a.denominator.bit_length()
        if a.numerator == 0:
            return self
        p = self.ctx.p
        v = val_p(self.ctx, a)
        k = ceil(self.err - v)
        if k <= 0:
            return ApproxPadic(self.ctx, _ZERO, self.err)
        if size <= 64 + 2 * k * p.bit_length():
            return self
        vi = int(v)
        pk = p**k
        num, den = a.numerator, a.denominator
        # strip the p-part recorded in v
        if vi > 0:
            num //= p**vi
        elif vi < 0:
            den //= p ** (-vi)
        u = num * pow(den, -1, pk) % pk
        if 2 * u > pk:
            u -= pk
        return ApproxPadic(self.ctx, Fraction(u) * Fraction(p) ** vi, self.err)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ApproxPadic):
            return other
        f = _as_fraction(other)
        if f is None:
            return None
        return ApproxPadic(self.ctx, f, INF)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        err = self.err if self.err is not INF and (o.err is INF or self.err <= o.err) else o.err
        return ApproxPadic(self.ctx, self.approx + o.approx, err)._maybe_reduce()

    __radd__ = __add__

    def __neg__(self):
        return ApproxPadic(self.ctx, -self.approx, self.err)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        # err = min over the three cross terms of the product expansion
        candidates = []
        if self.err is not INF:
            candidates.append(self.err + val_p(ctx, o.approx))
        if o.err is not INF:
            candidates.append(o.err + val_p(ctx, self.approx))
        if self.err is not INF and o.err is not INF:
            candidates.append(self.err + o.err)
        err = INF
        for c in candidates:
            if c is INF:
                continue
            if err is INF or c < err:
                err = c
        return ApproxPadic(ctx, self.approx * o.approx, err)._maybe_reduce()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.err is INF:
            if o.approx == 0:
                raise ZeroDivisionError("exact zero divisor")
            inv = ApproxPadic(self.ctx, 1 / o.approx, INF)
            return self * inv
        vb = o.certified_val()
        if vb is INDETERMINATE:
            raise PrecisionError("divisor valuation not certified; raise precision")
        inv = ApproxPadic(self.ctx, 1 / o.approx, o.err - 2 * vb)
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ApproxPadic(self.ctx, Fraction(1), INF)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- predicates ----------------------------------------------------

    def __bool__(self):
        # False only for EXACT zero; an approximate zero still carries error
        # mass that must not be dropped from sums.
        return not (self.err is INF and self.approx == 0)

    def __eq__(self, other):
        if isinstance(other, ApproxPadic):
            return (
                self.ctx.p == other.ctx.p
                and self.approx == other.approx
                and self.err == other.err
            )
        f = _as_fraction(other)
        if f is None:
            return NotImplemented
        return self.err is INF and self.approx == f

    def __hash__(self):
        return hash((self.ctx.p, self.approx, self.err))

    def __repr__(self):
        if self.err is INF:
            return f"ApproxPadic({self.approx}, exact)"
        return f"ApproxPadic({self.approx}, err>={self.err})"


def consistent(a: ApproxPadic, b: ApproxPadic) -> bool:
    """Could a and b approximate the same true value?"""
    err = a.err if (b.err is INF or (a.err is not INF and a.err <= b.err)) else b.err
    return val_p(a.ctx, a.approx - b.approx) >= err
