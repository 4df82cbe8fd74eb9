"""Quantum connections in q d/dq form and their Frobenius structures.

A connection is the operator q d/dq + A(q) with A(q) = sum A_m q^m a
matrix polynomial, written here through the rescaling q = pi t with
pi^(p-1) = -p.  In the rescaled coordinate the Frobenius equation for
Phi(t) reads, coefficient by coefficient,

    (m + ad)(Phi_m) = - sum_{0 <= i < m} A_{m-i} Phi_i
                      + sum_{j >= 1, i = m - p j >= 0} Phi_i A_j (-1)^j p^(1-j)

with ad(X) = A_0 X - p X A_0.  Nothing here ever materializes pi itself:
the rescaled coefficients stay in the base ring (rationals, or symbolic
Gamma polynomials for basis solves).  A_0 is required nilpotent, so
(m + ad) inverts by the finite expansion sum_s (-1)^s ad^s / m^(s+1).

The companion gauge problem transports the connection to its constant
part:  (m + ad_c)(P_m) = - sum_{i < m} A_{m-i} P_i with
ad_c(X) = A_0 X - X A_0, P_0 = I, and the Frobenius solution with
constant term Phi_0 is recovered as P(q) Phi_0 P(-q^p / p)^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .approx import ApproxPadic
from .errors import ValidationError
from .matrixops import (
    mat_add,
    mat_identity,
    mat_is_zero,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_shape,
    mat_sub,
    mat_zeros,
    mseries_inverse,
    mseries_mul,
    mseries_pullback,
)
from .valuation import PrimeContext

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Connection:
    """A q d/dq connection with graded basis data and a Gamma decomposition.

    coeffs[m] is the matrix A_m of the q^m term.  degrees gives the (even)
    cohomological degree of each basis vector; betti is the (degree, count)
    histogram; decomposition is a tuple of (GammaPoly, matrix) pairs whose
    weighted sum is the cup matrix of the Gamma class.
    """

    name: str
    rank: int
    coeffs: tuple
    degrees: tuple
    dim_c: int
    betti: tuple
    decomposition: tuple = ()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def a0(self) -> tuple:
        return self.coeffs[0]

    def validate(self) -> None:
        r = self.rank
        if r < 1 or len(self.coeffs) < 1:
            raise ValidationError("connection needs a positive rank and some matrices")
        for m, a in enumerate(self.coeffs):
            if mat_shape(a) != (r, r):
                raise ValidationError(f"coefficient {m} is not {r} x {r}")
        if len(self.degrees) != r:
            raise ValidationError("degree list does not match the rank")
        if any(d % 2 != 0 for d in self.degrees):
            raise ValidationError("basis degrees must be even")
        if sum(c for _, c in self.betti) != r:
            raise ValidationError("betti counts do not sum to the rank")
        hist = {}
        for d in self.degrees:
            hist[d] = hist.get(d, 0) + 1
        if dict(self.betti) != hist:
            raise ValidationError("betti histogram does not match the degrees")
        power = self.coeffs[0]
        for _ in range(r - 1):
            power = mat_mul(power, self.coeffs[0])
        if not mat_is_zero(power):
            raise ValidationError("constant coefficient is not nilpotent")
        for m, a in enumerate(self.coeffs):
            for i in range(r):
                for j in range(r):
                    if a[i][j] and self.degrees[i] != self.degrees[j] + 2 - 2 * m:
                        raise ValidationError(
                            f"coefficient {m} entry ({i},{j}) breaks the grading"
                        )

    def basis_constant_term(self, ctx: PrimeContext, b: tuple) -> tuple:
        """Scale the columns of b by p^(-deg/2): the constant term B . D."""
        r = self.rank
        return tuple(
            tuple(b[i][j] * Fraction(ctx.p) ** (-(self.degrees[j] // 2)) for j in range(r))
            for i in range(r)
        )


@dataclass(frozen=True)
class FrobeniusSolution:
    ctx: PrimeContext
    connection: Connection
    order: int
    coeffs: tuple  # coeffs[m] = Phi_m in the rescaled coordinate
    provenance: str = "direct"

    def constant_term(self) -> tuple:
        return self.coeffs[0]


@dataclass(frozen=True)
class GaugeSolution:
    ctx: PrimeContext
    connection: Connection
    order: int
    coeffs: tuple  # coeffs[m] = P_m, P_0 = I


def _ad(a0: tuple, x: tuple, p_weight) -> tuple:
    return mat_sub(mat_mul(a0, x), mat_scale(p_weight, mat_mul(x, a0)))


def _invert_shifted(a0: tuple, rhs: tuple, m: int, p_weight, rank: int) -> tuple:
    # (m + ad)^(-1) rhs = sum_s (-1)^s ad^s(rhs) / m^(s+1); ad is nilpotent.
    inv_m = Fraction(1, m)
    term = mat_scale(inv_m, rhs)
    total = term
    for _ in range(2 * rank + 1):
        term = mat_scale(-inv_m, _ad(a0, term, p_weight))
        if mat_is_zero(term):
            return total
        total = mat_add(total, term)
    raise ValidationError("shifted adjoint operator failed to invert")


def _vanishes(x) -> bool:
    # exact zero, or an approximation whose rational part is exactly zero
    if not x:
        return True
    return isinstance(x, ApproxPadic) and x.approx == 0


def intertwines(ctx: PrimeContext, conn: Connection, phi0: tuple) -> bool:
    """Whether A_0 Phi_0 = p Phi_0 A_0 holds (exactly, or to recorded error)."""
    lhs = mat_mul(conn.a0(), phi0)
    rhs = mat_scale(Fraction(ctx.p), mat_mul(phi0, conn.a0()))
    diff = mat_sub(lhs, rhs)
    return all(_vanishes(x) for row in diff for x in row)


def solve_frobenius(
    ctx: PrimeContext,
    conn: Connection,
    phi0: tuple,
    order: int,
    provenance: str = "direct",
) -> FrobeniusSolution:
    """Unique Frobenius expansion with the given intertwining constant term."""
    if not intertwines(ctx, conn, phi0):
        raise ValidationError("constant term does not intertwine with A_0")
    p = ctx.p
    a0 = conn.a0()
    r = conn.rank
    d = conn.degree
    coeffs = [phi0]
    for m in range(1, order + 1):
        rhs = mat_zeros(r, r)
        for j in range(1, min(d, m) + 1):
            if mat_is_zero(conn.coeffs[j]):
                continue
            rhs = mat_sub(rhs, mat_mul(conn.coeffs[j], coeffs[m - j]))
        j = 1
        while p * j <= m and j <= d:
            aj = conn.coeffs[j]
            if not mat_is_zero(aj):
                w = Fraction((-1) ** j) * Fraction(p) ** (1 - j)
                rhs = mat_add(rhs, mat_scale(w, mat_mul(coeffs[m - p * j], aj)))
            j += 1
        coeffs.append(_invert_shifted(a0, rhs, m, Fraction(p), r))
    return FrobeniusSolution(ctx, conn, order, tuple(coeffs), provenance)


def symbolic_constant_term(ctx: PrimeContext, conn: Connection) -> tuple:
    """Constant term with Gamma symbols left unevaluated: (sum poly . B) . D."""
    if not conn.decomposition:
        raise ValidationError(f"connection {conn.name!r} has no Gamma decomposition")
    r = conn.rank
    total = mat_zeros(r, r)
    for poly, b in conn.decomposition:
        total = mat_add(total, mat_scale(poly, b))
    return conn.basis_constant_term(ctx, total)


def solve_frobenius_basis(ctx: PrimeContext, conn: Connection, order: int) -> tuple:
    """One exact Frobenius expansion per Gamma-decomposition matrix."""
    if not conn.decomposition:
        raise ValidationError(f"connection {conn.name!r} has no Gamma decomposition")
    out = []
    for _, b in conn.decomposition:
        phi0 = conn.basis_constant_term(ctx, b)
        out.append(solve_frobenius(ctx, conn, phi0, order, provenance="basis"))
    return tuple(out)


def combine_basis_solutions(
    ctx: PrimeContext, conn: Connection, solutions: tuple, gamma_values: dict
) -> FrobeniusSolution:
    """Weight the basis expansions by evaluated Gamma-class coefficients.

    gamma_values maps odd derivative order to its p-adic approximation; the
    weights are the decomposition polynomials evaluated there.  Exact zero
    entries of the basis expansions stay exact, so structural vanishing in
    the combined solution is preserved.
    """
    if len(solutions) != len(conn.decomposition):
        raise ValidationError("basis solutions do not match the decomposition")
    weights = [poly.evaluate(gamma_values) for poly, _ in conn.decomposition]
    r = conn.rank
    order = min(s.order for s in solutions)
    combined = []
    for m in range(order + 1):
        acc = [[_ZERO] * r for _ in range(r)]
        for w, sol in zip(weights, solutions):
            block = sol.coeffs[m]
            for i in range(r):
                row = block[i]
                for j in range(r):
                    if row[j]:
                        acc[i][j] = acc[i][j] + w * row[j]
        combined.append(tuple(tuple(row) for row in acc))
    return FrobeniusSolution(ctx, conn, order, tuple(combined), provenance="combined")


def frobenius_residual(ctx: PrimeContext, conn: Connection, sol: FrobeniusSolution) -> tuple:
    """Coefficients of t dPhi/dt + A Phi - p Phi sigma(A); zero iff solved."""
    p = ctx.p
    d = conn.degree
    out = []
    for m in range(sol.order + 1):
        acc = mat_scale(Fraction(m), sol.coeffs[m])
        for j in range(0, min(d, m) + 1):
            if not mat_is_zero(conn.coeffs[j]):
                acc = mat_add(acc, mat_mul(conn.coeffs[j], sol.coeffs[m - j]))
        j = 0
        while p * j <= m and j <= d:
            aj = conn.coeffs[j]
            if not mat_is_zero(aj):
                w = Fraction((-1) ** j) * Fraction(p) ** (1 - j)
                acc = mat_sub(acc, mat_scale(w, mat_mul(sol.coeffs[m - p * j], aj)))
            j += 1
        out.append(acc)
    return tuple(out)


def solve_gauge(ctx: PrimeContext, conn: Connection, order: int) -> GaugeSolution:
    """Power-series gauge from the connection to its constant part, P_0 = I."""
    r = conn.rank
    d = conn.degree
    a0 = conn.a0()
    coeffs = [mat_identity(r)]
    for m in range(1, order + 1):
        rhs = mat_zeros(r, r)
        for j in range(1, min(d, m) + 1):
            if not mat_is_zero(conn.coeffs[j]):
                rhs = mat_sub(rhs, mat_mul(conn.coeffs[j], coeffs[m - j]))
        coeffs.append(_invert_shifted(a0, rhs, m, Fraction(1), r))
    return GaugeSolution(ctx, conn, order, tuple(coeffs))


def gauge_residual(ctx: PrimeContext, conn: Connection, gauge: GaugeSolution) -> tuple:
    d = conn.degree
    a0 = conn.a0()
    out = []
    for m in range(gauge.order + 1):
        acc = mat_scale(Fraction(m), gauge.coeffs[m])
        for j in range(0, min(d, m) + 1):
            if not mat_is_zero(conn.coeffs[j]):
                acc = mat_add(acc, mat_mul(conn.coeffs[j], gauge.coeffs[m - j]))
        acc = mat_sub(acc, mat_mul(gauge.coeffs[m], a0))
        out.append(acc)
    return tuple(out)


def frobenius_from_gauge(
    ctx: PrimeContext, conn: Connection, gauge: GaugeSolution, phi0: tuple, order: int
) -> FrobeniusSolution:
    """Recover the Frobenius expansion as P(q) Phi_0 P(-q^p / p)^{-1}."""
    if order > gauge.order:
        raise ValidationError("gauge expansion is too short for the requested order")
    if not intertwines(ctx, conn, phi0):
        raise ValidationError("constant term does not intertwine with A_0")
    left = list(gauge.coeffs[: order + 1])
    pulled = mseries_pullback(gauge.coeffs, ctx, order)
    inv = mseries_inverse(pulled, order)
    middle = [mat_mul(phi0, c) for c in inv]
    prod = mseries_mul(left, middle, order)
    return FrobeniusSolution(ctx, conn, order, tuple(prod), provenance="gauge")
