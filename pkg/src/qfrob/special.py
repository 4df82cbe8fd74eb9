"""Dwork exponential coefficients and derivatives of the p-adic Gamma function.

The splitting function D(z) = exp(z + z^p/p) = sum d_m z^m has p-adically
bounded denominators; its coefficients at indices divisible by p give the
Mahler expansion of Gamma_p at arguments in -pZ_p:

    Gamma_p(-pz) = sum_m (-p)^m d_{mp} z(z-1)...(z-m+1).

Substituting w = -pz and reading off w^k via the falling-factorial
coefficients s(m,k) (signed Stirling, first kind):

    Gamma_p^(k)(0) = k! (-p)^(-k) sum_m (-p)^m d_{mp} s(m,k),

and the explicit k=1 case  Gamma_p'(0) = sum_{m>0} p^(m-1) d_{mp} (m-1)!
pins the normalization.  A truncation bound M = M(k, G) guarantees the
discarded tail has valuation >= G (strictly above, in fact), so the partial
sum is an ApproxPadic with err_val = G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .approx import ApproxPadic
from .errors import PrecisionError
from .gammasym import GammaPoly
from .valuation import INF, PrimeContext

_LOG_SLACK = Fraction(1, 10**9)


def _ln_bounds(x: int) -> tuple:
    # natural log of a positive integer, bracketed by exact rationals;
    # double precision is good to ~1e-13 here, the slack is 1e-9
    f = Fraction(math.log(x))
    return f - _LOG_SLACK, f + _LOG_SLACK


@lru_cache(maxsize=None)
def dwork_coefficients(ctx: PrimeContext, order: int) -> tuple:
    """Coefficients d_0..d_order of exp(z + z^p/p), by Cauchy product."""
    p = ctx.p
    inv_fact = [Fraction(1)]
    for m in range(1, order + 1):
        inv_fact.append(inv_fact[-1] / m)
    out = []
    for m in range(order + 1):
        total = Fraction(0)
        pj = 1
        j = 0
        while p * j <= m:
            total += Fraction(1, pj) * inv_fact[j] * inv_fact[m - p * j]
            pj *= p
            j += 1
        out.append(total)
    return tuple(out)


@lru_cache(maxsize=None)
def falling_factorial_coefficients(rows: int) -> tuple:
    """Triangle s[m][k] = [z^k] z(z-1)...(z-m+1) for m = 0..rows."""
    tri = [(1,)]
    for m in range(1, rows + 1):
        prev = tri[-1]
        row = []
        for k in range(m + 1):
            v = 0
            if k >= 1:
                v += prev[k - 1]
            if k < m:
                v -= (m - 1) * prev[k]
            row.append(v)
        tri.append(tuple(row))
    return tuple(tri)


def mahler_truncation_bound(ctx: PrimeContext, k: int, target: Fraction) -> int:
    """Smallest M for which summing m < M certifies Gamma_p^(k)(0) to err >= target.

    M must satisfy both
        M >= k p / ((p-1) log p) + 1
        k/(p-1) + M(p-1)/p - log_p(k) - k log_p(M-1) - (2p-1)/(p-1) > target,
    evaluated with outward-rounded logarithms so the returned M is safe.
    k = 0 returns 1: Gamma_p(0) = 1 exactly and every later Mahler summand
    carries a factor z.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if k == 0:
        return 1
    p = ctx.p
    target = Fraction(target)
    ln_p_low, _ = _ln_bounds(p)
    start = Fraction(k * p, p - 1) / ln_p_low + 1
    m = max(2, math.ceil(start))
    _, ln_k_high = _ln_bounds(k)
    base = Fraction(k, p - 1) - ln_k_high / ln_p_low - Fraction(2 * p - 1, p - 1)
    while True:
        _, ln_m1_high = _ln_bounds(m - 1)
        f_low = base + Fraction(m * (p - 1), p) - k * ln_m1_high / ln_p_low
        if f_low > target:
            return m
        m += 1


@dataclass(frozen=True)
class GammaDerivatives:
    """Gamma_p^(k)(0) for k = 0..k_max, certified to err_val >= precision."""

    ctx: PrimeContext
    k_max: int
    precision: Fraction
    values: tuple
    truncations: tuple

    def taylor(self) -> tuple:
        """Taylor coefficients g_k = Gamma_p^(k)(0) / k!."""
        return tuple(
            v * Fraction(1, math.factorial(k)) for k, v in enumerate(self.values)
        )


@lru_cache(maxsize=None)
def gamma_derivatives(ctx: PrimeContext, k_max: int, precision) -> GammaDerivatives:
    precision = Fraction(precision)
    p = ctx.p
    truncations = [mahler_truncation_bound(ctx, k, precision) for k in range(k_max + 1)]
    m_top = max(truncations)
    dw = dwork_coefficients(ctx, (m_top - 1) * p if m_top > 1 else 0)
    tri = falling_factorial_coefficients(m_top - 1)
    values = [ApproxPadic.exact(ctx, 1)]
    for k in range(1, k_max + 1):
        total = Fraction(0)
        sign_pow = Fraction(1)  # (-p)^m
        for m in range(truncations[k]):
            if k <= m:
                s = tri[m][k]
                if s:
                    total += sign_pow * dw[m * p] * s
            sign_pow *= -p
        value = Fraction(math.factorial(k)) * Fraction(-p) ** (-k) * total
        values.append(ApproxPadic.of(ctx, value, precision))
    return GammaDerivatives(ctx, k_max, precision, tuple(values), tuple(truncations))


def mahler_term(ctx: PrimeContext, k: int, m: int) -> Fraction:
    """Exact contribution of index m to Gamma_p^(k)(0) (for tail estimates)."""
    if m < k:
        return Fraction(0)
    dw = dwork_coefficients(ctx, m * ctx.p)
    tri = falling_factorial_coefficients(m)
    p = ctx.p
    return (
        Fraction(math.factorial(k))
        * Fraction(-p) ** (-k)
        * Fraction(-p) ** m
        * dw[m * p]
        * tri[m][k]
    )


# -- symbolic Taylor and log coefficients ------------------------------


@lru_cache(maxsize=None)
def taylor_polys(m_max: int) -> tuple:
    """Taylor coefficients g_0..g_m_max of Gamma_p as GammaPoly in odd symbols.

    Odd k: g_k = G_k / k!.  Even k > 0 is eliminated by the reflection
    identity Gamma_p(z) Gamma_p(-z) = 1:
        g_k = (-1)^(k/2-1) g_{k/2}^2 / 2 + sum_{0<j<k/2} (-1)^(j-1) g_j g_{k-j}.
    """
    out = [GammaPoly.one()]
    for k in range(1, m_max + 1):
        if k % 2 == 1:
            out.append(GammaPoly.symbol(k) / math.factorial(k))
        else:
            h = k // 2
            acc = out[h] * out[h] * Fraction((-1) ** (h - 1), 2)
            for j in range(1, h):
                acc = acc + out[j] * out[k - j] * Fraction((-1) ** (j - 1))
            out.append(acc)
    return tuple(out)


def _formal_log(series: list) -> list:
    """Coefficients of log(S) for a series S with constant term exactly 1;
    works over any commutative ring entries (GammaPoly, ApproxPadic)."""
    n = len(series) - 1
    lam = [series[0] * 0]  # typed zero
    for m in range(1, n + 1):
        acc = series[m]
        for j in range(1, m):
            acc = acc - lam[j] * series[m - j] * Fraction(j, m)
        lam.append(acc)
    return lam


@lru_cache(maxsize=None)
def log_gamma_polys(m_max: int) -> tuple:
    """l_m = m! [z^m] log Gamma_p(z) as GammaPoly; even entries vanish
    identically once the reflection identity has eliminated even derivatives."""
    lam = _formal_log(list(taylor_polys(m_max)))
    return tuple(l * Fraction(math.factorial(m)) for m, l in enumerate(lam))


@dataclass(frozen=True)
class LogGammaCoefficients:
    """Numeric l_m with certified errors; even entries are approximately 0
    (their vanishing is a consequence, not an input, of this computation)."""

    ctx: PrimeContext
    m_max: int
    precision: Fraction
    values: tuple
    derivatives: GammaDerivatives


def log_gamma_coefficients(ctx: PrimeContext, m_max: int, precision) -> LogGammaCoefficients:
    precision = Fraction(precision)
    for attempt in range(5):
        g_in = precision * 2**attempt
        derivs = gamma_derivatives(ctx, m_max, g_in)
        taylor = [ApproxPadic.exact(ctx, 1), *derivs.taylor()[1:]]
        lam = _formal_log(taylor)
        values = [ApproxPadic.exact(ctx, 0)]
        for m in range(1, m_max + 1):
            values.append(lam[m] * Fraction(math.factorial(m)))
        if all(v.err is INF or v.err >= precision for v in values):
            return LogGammaCoefficients(ctx, m_max, precision, tuple(values), derivs)
    raise PrecisionError(
        f"log-Gamma coefficients not certified to {precision} after escalation"
    )
