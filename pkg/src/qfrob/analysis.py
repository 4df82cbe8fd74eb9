"""Valuation profiles, growth fits, characteristic polynomials, Newton polygons.

Evaluation "at the singular radius" never materializes a root of -p: a
scalar series g(q) splits by exponent residue j mod (p-1), each class sums
to g_j(-p) in plain arithmetic, and the class contributes
val(g_j(-p)) + j/(p-1).  The minimum over classes is the valuation of
g evaluated at any point of valuation 1/(p-1), simultaneously for all of
them.  Results computed from a truncated series are tentative by nature
(a deep tail coefficient of low valuation could change them); the flag is
carried, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError, ValidationError
from .matrixops import ScalarSeries, mat_trace, matrix_min_val, mseries_mul
from .valuation import INDETERMINATE, INF, PrimeContext, val_min, val_p

_ZERO = Fraction(0)


# -- valuation profiles -------------------------------------------------


@dataclass(frozen=True)
class ValuationProfile:
    ctx: PrimeContext
    name: str
    entries: tuple  # (m, val) with val Fraction | INF | INDETERMINATE

    @property
    def order(self) -> int:
        return len(self.entries) - 1

    def value(self, m: int):
        return self.entries[m][1]


def valuation_profile(ctx: PrimeContext, solution) -> ValuationProfile:
    entries = tuple(
        (m, matrix_min_val(ctx, coeff)) for m, coeff in enumerate(solution.coeffs)
    )
    name = getattr(solution.connection, "name", "series")
    return ValuationProfile(ctx, name, entries)


def profile_csv_rows(profile: ValuationProfile) -> list:
    """Rows m, neg_val_num, neg_val_den, neg_val_float, certified.

    Vanishing coefficients print as float -inf with empty rational fields;
    entries whose certification failed leave all value fields empty.
    """
    rows = []
    for m, v in profile.entries:
        if v is INDETERMINATE:
            rows.append((m, "", "", "", "false"))
        elif v is INF:
            rows.append((m, "", "", "-inf", "true"))
        else:
            neg = -v
            rows.append(
                (m, neg.numerator, neg.denominator, repr(float(neg)), "true")
            )
    return rows


@dataclass(frozen=True)
class FitResult:
    slope: Fraction
    intercept: Fraction
    count: int
    window: tuple
    reference: Fraction  # the comparison line 1/(p-1)


def growth_rate_fit(profile: ValuationProfile, window: tuple) -> FitResult:
    """Exact least-squares slope of (m, -val) over the window.

    Vanishing coefficients (val = +inf) carry no growth information and are
    skipped; uncertified entries inside the window abort the fit.
    """
    lo, hi = window
    if lo < 0 or hi > profile.order or lo >= hi:
        raise ValidationError(f"window [{lo},{hi}] outside profile range")
    bad = [m for m, v in profile.entries if lo <= m <= hi and v is INDETERMINATE]
    if bad:
        raise PrecisionError(
            f"uncertified valuations in fit window at m = {bad}; raise precision"
        )
    pts = [
        (Fraction(m), -v)
        for m, v in profile.entries
        if lo <= m <= hi and v is not INF
    ]
    n = len(pts)
    if n < 2:
        raise ValidationError("fit window needs at least two finite points")
    sx = sum(x for x, _ in pts)
    sy = sum(y for _, y in pts)
    sxx = sum(x * x for x, _ in pts)
    sxy = sum(x * y for x, y in pts)
    denom = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / denom
    intercept = (sy - slope * sx) / n
    return FitResult(slope, intercept, n, (lo, hi), profile.ctx.pi_val)


# -- characteristic polynomial -----------------------------------------


@dataclass(frozen=True)
class CharPolySeries:
    """det(z I - M(q)) as truncated series coefficients, index = power of z."""

    ctx: PrimeContext
    rank: int
    order: int
    coeffs: tuple  # tuple of ScalarSeries, length rank+1; top one is exactly 1


def char_poly(solution) -> CharPolySeries:
    """Division-free-style characteristic polynomial of a truncated series.

    Runs the trace recurrence M_k = A M_{k-1} + c_{r-k+1} I,
    c_{r-k} = -tr(A M_k)/k on truncated series arithmetic; the only
    divisions are by the integers k <= rank, which are exact scalar
    rescalings (never inversions of series elements).
    """
    ctx = solution.ctx
    a = list(solution.coeffs)
    r = len(a[0])
    n = solution.order
    one = ScalarSeries((Fraction(1),) + (_ZERO,) * n, complete=True)
    out = {r: one}
    work = [_identity_like(a[0])] + [_zero_like(a[0]) for _ in range(n)]
    for k in range(1, r + 1):
        am = mseries_mul(a, work, n)
        ck = [mat_trace(x) * Fraction(-1, k) for x in am]
        out[r - k] = ScalarSeries(tuple(ck), complete=False)
        if k < r:
            work = [_add_scalar_diag(am[m], ck[m]) for m in range(n + 1)]
    return CharPolySeries(ctx, r, n, tuple(out[k] for k in range(r + 1)))


def _identity_like(a) -> tuple:
    r = len(a)
    return tuple(
        tuple(Fraction(1) if i == j else _ZERO for j in range(r)) for i in range(r)
    )


def _zero_like(a) -> tuple:
    r = len(a)
    return tuple((_ZERO,) * r for _ in range(r))


def _add_scalar_diag(a, c) -> tuple:
    r = len(a)
    return tuple(
        tuple(a[i][j] + c if i == j else a[i][j] for j in range(r)) for i in range(r)
    )


def det_series_residual(ctx: PrimeContext, conn, series: ScalarSeries) -> tuple:
    """q d/dq g + (tr A(q) - p tr A(-q^p/p)) g truncated at the series order.

    The determinant of any Frobenius expansion of `conn` solves this scalar
    equation, which makes it an independent check on char_poly output.
    """
    p = ctx.p
    tr = [mat_trace(c) for c in conn.coeffs]
    g = list(series.coeffs)
    n = len(g) - 1
    out = []
    for m in range(n + 1):
        acc = Fraction(m) * g[m]
        for j in range(0, min(len(tr) - 1, m) + 1):
            if tr[j]:
                acc = acc + tr[j] * g[m - j]
        j = 0
        while p * j <= m and j < len(tr):
            if tr[j]:
                w = Fraction((-1) ** j) * Fraction(p) ** (1 - j)
                acc = acc - w * tr[j] * g[m - p * j]
            j += 1
        out.append(acc)
    return tuple(out)


# -- evaluation at the singular radius ---------------------------------


@dataclass(frozen=True)
class ResidueClassValue:
    residue: int
    offset: Fraction  # j/(p-1)
    value: object  # Fraction | INF | INDETERMINATE (value of the class sum)
    floor: object  # error floor when uncertified, else None
    certified: bool


@dataclass(frozen=True)
class PiThetaReport:
    """Valuation of g at radius 1/(p-1), identical for every unit direction."""

    ctx: PrimeContext
    order: int
    value: object  # Fraction | INF | INDETERMINATE
    tentative: bool
    classes: tuple


def val_at_pi_theta(ctx: PrimeContext, series: ScalarSeries) -> PiThetaReport:
    p = ctx.p
    g = series.coeffs
    n = len(g) - 1
    classes = []
    known = []
    floors = []
    for j in range(min(p - 1, n + 1)):
        total = _ZERO
        power = Fraction(1)  # (-p)^((m-j)/(p-1))
        for m in range(j, n + 1, p - 1):
            if g[m]:
                total = total + g[m] * power
            power *= -p
        offset = Fraction(j, p - 1)
        if hasattr(total, "certified_val"):
            v = total.certified_val()
            if v is INDETERMINATE:
                f = total.err + offset
                classes.append(ResidueClassValue(j, offset, INDETERMINATE, f, False))
                floors.append(f)
                continue
        else:
            v = val_p(ctx, total)
        if v is INF:
            classes.append(ResidueClassValue(j, offset, INF, None, True))
        else:
            classes.append(ResidueClassValue(j, offset, v + offset, None, True))
            known.append(v + offset)
    best = val_min(*known)
    if best is INF:
        value = INF if not floors else INDETERMINATE
    elif all(f >= best for f in floors):
        value = best
    else:
        value = INDETERMINATE
    return PiThetaReport(ctx, n, value, not series.complete, tuple(classes))


# -- Newton polygons ---------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple  # finite input points (x, y)
    vertices: tuple
    slopes: tuple  # (slope, multiplicity), weakly increasing
    tentative: bool = False

    def slope_multiset(self) -> tuple:
        out = []
        for s, mult in self.slopes:
            out.extend([s] * mult)
        return tuple(out)

    def root_valuations(self) -> tuple:
        return tuple(-s for s in self.slope_multiset())


def newton_polygon(points, tentative: bool = False) -> NewtonPolygon:
    """Lower convex hull of (index, valuation) points.

    Points at +infinity lie above everything and drop out (a vanishing
    leading point would change the degree, so the leftmost point must be
    finite); uncertified valuations cannot be placed at all.
    """
    if not points:
        raise ValidationError("no points for a Newton polygon")
    pts = sorted(points)
    if len({x for x, _ in pts}) != len(pts):
        raise ValidationError("Newton polygon abscissae must be distinct")
    bad = [x for x, y in pts if y is INDETERMINATE]
    if bad:
        raise PrecisionError(f"uncertified valuations at indices {bad}")
    if pts[0][1] is INF:
        raise ValidationError("leftmost point must be finite")
    finite = [(Fraction(x), Fraction(y)) for x, y in pts if y is not INF]
    hull = []
    for pt in finite:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        mult = x2 - x1
        if mult != int(mult):
            raise ValidationError("non-integer horizontal extent")
        slopes.append(((y2 - y1) / (x2 - x1), int(mult)))
    verts = tuple((x, y) for x, y in hull)
    return NewtonPolygon(tuple(finite), verts, tuple(slopes), tentative)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def char_poly_newton(char: CharPolySeries) -> tuple:
    """Newton polygon of the char poly evaluated at the singular radius.

    Returns (polygon, reports).  Fails with PrecisionError if any needed
    coefficient valuation is uncertified.
    """
    reports = tuple(val_at_pi_theta(char.ctx, s) for s in char.coeffs)
    pts = [(k, rep.value) for k, rep in enumerate(reports)]
    tentative = any(rep.tentative for rep in reports)
    return newton_polygon(pts, tentative=tentative), reports


@dataclass(frozen=True)
class BettiComparison:
    expected: tuple  # sorted degree/2 multiset from the connection
    actual: tuple  # sorted slope multiset
    ok: bool
    mismatches: tuple


def betti_comparison(polygon: NewtonPolygon, conn) -> BettiComparison:
    expected = tuple(sorted(Fraction(d, 2) for d in conn.degrees))
    actual = tuple(sorted(polygon.slope_multiset()))
    if expected == actual:
        return BettiComparison(expected, actual, True, ())
    mism = tuple(
        (e, a) for e, a in zip(expected, actual) if e != a
    ) or ((len(expected), len(actual)),)
    return BettiComparison(expected, actual, False, mism)
