"""Immutable matrices and truncated series over exact or approximate entries.

Matrices are tuples of tuples.  Entries may be Fraction, int, ApproxPadic,
or any ring element supporting +, *, unary -, and truthiness (falsy means
exactly zero; ApproxPadic is falsy only when exact zero so no error mass is
ever dropped).  Products skip falsy entries, which matters for the sparse
nilpotent matrices that drive the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .valuation import INDETERMINATE, INF, PrimeContext, val_min, val_p

_ZERO = Fraction(0)
_ONE = Fraction(1)


def mat(rows) -> tuple:
    return tuple(tuple(row) for row in rows)


def mat_zeros(r: int, c: int, zero=_ZERO) -> tuple:
    return tuple((zero,) * c for _ in range(r))


def mat_identity(n: int, one=_ONE, zero=_ZERO) -> tuple:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_shape(a) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a) -> tuple:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(c, a) -> tuple:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_map(f, a) -> tuple:
    return tuple(tuple(f(x) for x in row) for row in a)


def mat_mul(a, b) -> tuple:
    rows_b = len(b)
    cols_b = len(b[0])
    out = []
    for ra in a:
        acc = [0] * cols_b
        for k in range(rows_b):
            x = ra[k]
            if not x:
                continue
            rb = b[k]
            for j in range(cols_b):
                y = rb[j]
                if y:
                    acc[j] = acc[j] + x * y
        out.append(tuple(v if not isinstance(v, int) or v else _ZERO for v in acc))
    return tuple(out)


def mat_trace(a):
    t = 0
    for i in range(len(a)):
        t = t + a[i][i]
    return t if not isinstance(t, int) else Fraction(t)


def mat_is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def matrix_min_val(ctx: PrimeContext, a):
    """Minimum entry valuation of a matrix, certified or INDETERMINATE.

    Exact entries contribute their exact valuation; approximate entries
    contribute a certified valuation or, failing that, their error floor.
    The minimum of the known valuations is certified when every floor sits
    at or above it.
    """
    known = []
    floors = []
    for row in a:
        for x in row:
            if hasattr(x, "certified_val"):
                v = x.certified_val()
                if v is INDETERMINATE:
                    floors.append(x.err)
                else:
                    known.append(v)
            else:
                known.append(val_p(ctx, x))
    m = val_min(*known)
    if m is INF:
        return INF if not floors else INDETERMINATE
    if all(f >= m for f in floors):
        return m
    return INDETERMINATE


# -- truncated matrix series ------------------------------------------


@dataclass(frozen=True)
class MatrixSeries:
    """Matrix-valued series truncated at a fixed order (inclusive)."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def rank(self) -> int:
        return len(self.coeffs[0])

    def coeff(self, m: int):
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return mat_zeros(*mat_shape(self.coeffs[0]))


def mseries_mul(a: list, b: list, order: int) -> list:
    """Truncated product of two lists of matrix coefficients."""
    shape = (len(a[0]), len(b[0][0]))
    out = [mat_zeros(*shape) for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if i > order:
            break
        if mat_is_zero(ai):
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if mat_is_zero(bj):
                continue
            out[i + j] = mat_add(out[i + j], mat_mul(ai, bj))
    return out


def mseries_pullback(coeffs: list, ctx: PrimeContext, order: int) -> list:
    """Substitute q -> -q^p/p into a matrix series, truncated at `order`."""
    shape = mat_shape(coeffs[0])
    out = [mat_zeros(*shape) for _ in range(order + 1)]
    scale = Fraction(-1, ctx.p)
    power = Fraction(1)
    for m, cm in enumerate(coeffs):
        if m * ctx.p > order:
            break
        if not mat_is_zero(cm):
            out[m * ctx.p] = mat_scale(power, cm)
        power *= scale
    return out


def mseries_inverse(coeffs: list, order: int) -> list:
    """Invert a matrix series whose constant term is exactly the identity."""
    n = len(coeffs[0])
    ident = mat_identity(n)
    if coeffs[0] != ident:
        raise ValueError("series inverse requires identity constant term")
    inv = [ident]
    for m in range(1, order + 1):
        acc = mat_zeros(n, n)
        for i in range(0, m):
            j = m - i
            if j < len(coeffs) and not mat_is_zero(coeffs[j]):
                acc = mat_add(acc, mat_mul(coeffs[j], inv[i]))
        inv.append(mat_neg(acc))
    return inv


# -- truncated scalar series ------------------------------------------


@dataclass(frozen=True)
class ScalarSeries:
    """Scalar series truncated at a fixed order; `complete` marks data with
    no hidden tail (a polynomial known exactly), which analysis results can
    then report as non-tentative."""

    coeffs: tuple
    complete: bool = False

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, m: int):
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return _ZERO


def sseries_mul(a: list, b: list, order: int) -> list:
    out = [_ZERO] * (order + 1)
    for i, x in enumerate(a):
        if i > order:
            break
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def sseries_add(a: list, b: list, order: int) -> list:
    out = [_ZERO] * (order + 1)
    for i in range(min(order + 1, len(a))):
        out[i] = out[i] + a[i]
    for i in range(min(order + 1, len(b))):
        out[i] = out[i] + b[i]
    return out
