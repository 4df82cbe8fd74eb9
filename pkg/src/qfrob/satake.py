"""Grassmannian connections and Frobenius data as exterior powers.

Everything is phrased in wedge coordinates on the projective-space side:
the basis of k-fold wedges of x-powers, ordered lexicographically as
strictly decreasing tuples.  The effective degree of a wedge is
2*(sum of entries) - k(k-1), which makes the minimal wedge
(k-1, k-2, ..., 0) the unit (degree 0).

Two different exterior powers appear.  The connection uses the
derivation-type power (sum over slots, with reordering signs); the
Frobenius uses the multiplicative power (k x k minors).  The passage from
the projective-space q-series inserts a sign eps = (-1)^(k-1) on each
q^N-coefficient block — series on both sides are functions of q^N, so no
root of unity is ever constructed — and the constant p-power
p^(k(k-1)/2) realigns the grading-shifted scalings: conjugating
diag(p^(-j)) through the minors gives p^(-sum(w)), and
p^(k(k-1)/2 - sum(w)) = p^(-deg(w)/2) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .connection import Connection, FrobeniusSolution, solve_frobenius, symbolic_constant_term
from .errors import ValidationError
from .gammasym import GammaPoly
from .matrixops import mat_is_zero, mat_scale, mat_zeros
from .valuation import PrimeContext

_ZERO = Fraction(0)


@dataclass(frozen=True)
class WedgeBasis:
    n: int
    k: int
    tuples: tuple  # strictly decreasing k-tuples in lexicographic order

    @property
    def size(self) -> int:
        return len(self.tuples)

    def degree(self, w: tuple) -> int:
        return 2 * sum(w) - self.k * (self.k - 1)

    def index(self, w: tuple) -> int:
        return self.tuples.index(w)


def wedge_basis(n: int, k: int) -> WedgeBasis:
    if not 1 <= k <= n:
        raise ValidationError(f"wedge degree {k} out of range for dimension {n}")
    tups = sorted(tuple(reversed(c)) for c in combinations(range(n), k))
    return WedgeBasis(n, k, tuple(tups))


@dataclass(frozen=True)
class SatakeContext:
    """Bookkeeping constants of the exterior-power passage for Gr(k, N)."""

    n: int
    k: int

    @property
    def epsilon(self) -> int:
        return (-1) ** (self.k - 1)

    @property
    def shift_exponent(self) -> int:
        # exponent of the constant p-power matching the grading shift; the
        # k = 1 case must be the identity passage, forcing k(k-1)/2
        return self.k * (self.k - 1) // 2


def _sort_signed(values: list):
    """Sort into strictly decreasing order, tracking the permutation sign;
    None if two entries collide (the wedge vanishes)."""
    vals = list(values)
    sign = 1
    for i in range(1, len(vals)):
        j = i
        while j > 0 and vals[j] > vals[j - 1]:
            vals[j], vals[j - 1] = vals[j - 1], vals[j]
            sign = -sign
            j -= 1
        if j > 0 and vals[j] == vals[j - 1]:
            return None
    return tuple(vals), sign


def lambda_lie(basis: WedgeBasis, a) -> tuple:
    """Derivation-type exterior power: act in each slot, with wedge signs."""
    if len(a) != basis.n:
        raise ValidationError("matrix size does not match the wedge dimension")
    idx = {w: i for i, w in enumerate(basis.tuples)}
    size = basis.size
    out = [[_ZERO] * size for _ in range(size)]
    for col, w in enumerate(basis.tuples):
        for slot in range(basis.k):
            src = w[slot]
            for i in range(basis.n):
                coeff = a[i][src]
                if not coeff:
                    continue
                bumped = list(w)
                bumped[slot] = i
                res = _sort_signed(bumped)
                if res is None:
                    continue
                target, sign = res
                out[idx[target]][col] = out[idx[target]][col] + sign * coeff
    return tuple(tuple(row) for row in out)


def _det(m: list, add, sub, mul, zero):
    """Cofactor determinant over caller-supplied ring operations."""
    size = len(m)
    if size == 1:
        return m[0][0]
    total = zero
    for j in range(size):
        x = m[0][j]
        if not _nonzero(x):
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = mul(x, _det(minor, add, sub, mul, zero))
        total = add(total, term) if j % 2 == 0 else sub(total, term)
    return total


def _nonzero(x) -> bool:
    if isinstance(x, list):
        return any(x)
    return bool(x)


def lambda_group(basis: WedgeBasis, a) -> tuple:
    """Multiplicative exterior power: k x k minors in the wedge basis."""
    if len(a) != basis.n:
        raise ValidationError("matrix size does not match the wedge dimension")
    return tuple(
        tuple(
            _det(
                [[a[wr[l]][wc[t]] for t in range(basis.k)] for l in range(basis.k)],
                lambda u, v: u + v,
                lambda u, v: u - v,
                lambda u, v: u * v,
                _ZERO,
            )
            for wc in basis.tuples
        )
        for wr in basis.tuples
    )


def lambda_group_series(basis: WedgeBasis, coeffs: list, order: int) -> list:
    """Minors of a truncated matrix series, as a list of matrices."""
    from .matrixops import sseries_mul

    def sadd(u, v):
        return [x + y for x, y in zip(u, v)]

    def ssub(u, v):
        return [x - y for x, y in zip(u, v)]

    def smul(u, v):
        return sseries_mul(u, v, order)

    zero = [_ZERO] * (order + 1)
    size = basis.size
    out = [
        [[_ZERO] * size for _ in range(size)] for _ in range(order + 1)
    ]
    for r_i, wr in enumerate(basis.tuples):
        for c_i, wc in enumerate(basis.tuples):
            block = [
                [
                    [coeffs[m][wr[l]][wc[t]] for m in range(order + 1)]
                    for t in range(basis.k)
                ]
                for l in range(basis.k)
            ]
            d = _det(block, sadd, ssub, smul, zero)
            for m in range(order + 1):
                out[m][r_i][c_i] = d[m]
    return [tuple(tuple(row) for row in mmat) for mmat in out]


def gaussian_binomial(n: int, k: int) -> tuple:
    """Coefficient list of the q-binomial, indexed by q-power."""
    if k < 0 or k > n:
        return (0,)
    table = {(0, 0): (1,)}
    for nn in range(1, n + 1):
        for kk in range(0, min(nn, k) + 1):
            if kk == 0 or kk == nn:
                table[(nn, kk)] = (1,)
                continue
            a = table[(nn - 1, kk - 1)]
            b = table[(nn - 1, kk)]
            width = max(len(a), len(b) + kk)
            row = [0] * width
            for i, c in enumerate(a):
                row[i] += c
            for i, c in enumerate(b):
                row[i + kk] += c
            table[(nn, kk)] = tuple(row)
    return table[(n, k)]


def grassmannian_connection(k: int, n: int) -> Connection:
    """Exterior-power connection on the wedge basis, rank binomial(N, k).

    The underlying rank-N data is the multiplication-by-x matrix of the
    projective space, with its q^N entry carrying the sign eps; the wedge
    action is the derivation-type power, scaled by N (the first Chern
    class of the ambient geometry is N times the generating class).
    """
    if not 1 <= k <= n - 1:
        raise ValidationError(f"need 1 <= k <= N-1, got k={k}, N={n}")
    basis = wedge_basis(n, k)
    sat = SatakeContext(n, k)
    x0 = tuple(
        tuple(Fraction(1) if i == j + 1 else _ZERO for j in range(n)) for i in range(n)
    )
    corner = tuple(
        tuple(
            Fraction(1) if (i, j) == (0, n - 1) else _ZERO for j in range(n)
        )
        for i in range(n)
    )
    a0 = mat_scale(Fraction(n), lambda_lie(basis, x0))
    an = mat_scale(Fraction(n * sat.epsilon), lambda_lie(basis, corner))
    size = basis.size
    coeffs = [a0] + [mat_zeros(size, size) for _ in range(n - 1)] + [an]
    degrees = tuple(basis.degree(w) for w in basis.tuples)
    hist = {}
    for d in degrees:
        hist[d] = hist.get(d, 0) + 1
    betti = tuple(sorted(hist.items()))
    gauss = gaussian_binomial(n, k)
    if tuple(c for _, c in betti) != tuple(c for c in gauss if c):
        raise ValidationError("wedge degrees disagree with the q-binomial counts")
    from .registry import projective_space_gamma, projective_space_ring

    ring = projective_space_ring(n)
    b_cp = ring.cup_matrix(projective_space_gamma(n))
    big = lambda_group(basis, b_cp)
    mono_mats = {}
    for i in range(size):
        for j in range(size):
            entry = big[i][j]
            if not isinstance(entry, GammaPoly):
                entry = GammaPoly.const(entry)
            for mono, coeff in entry.sorted_terms():
                target = mono_mats.setdefault(
                    mono, [[_ZERO] * size for _ in range(size)]
                )
                target[i][j] = coeff
    decomposition = tuple(
        (GammaPoly({mono: Fraction(1)}), tuple(tuple(row) for row in mono_mats[mono]))
        for mono in sorted(mono_mats)
    )
    conn = Connection(
        name=f"grassmannian({k},{n})",
        rank=size,
        coeffs=tuple(coeffs),
        degrees=degrees,
        dim_c=k * (n - k),
        betti=betti,
        decomposition=decomposition,
    )
    conn.validate()
    return conn


def grassmannian_direct(ctx: PrimeContext, k: int, n: int, order: int) -> FrobeniusSolution:
    """Solve the wedge connection head-on from its own constant term."""
    conn = grassmannian_connection(k, n)
    phi0 = symbolic_constant_term(ctx, conn)
    return solve_frobenius(ctx, conn, phi0, order, provenance="direct")


def grassmannian_frobenius(ctx: PrimeContext, k: int, n: int, order: int) -> FrobeniusSolution:
    """Build the Frobenius series by minors of the projective-space series."""
    conn = grassmannian_connection(k, n)
    basis = wedge_basis(n, k)
    sat = SatakeContext(n, k)
    from .registry import builtin

    cp = builtin(f"cp({n})")
    phi0_cp = symbolic_constant_term(ctx, cp)
    sol_cp = solve_frobenius(ctx, cp, phi0_cp, order, provenance="projective")
    scaled = []
    eps = Fraction(sat.epsilon)
    for m, c in enumerate(sol_cp.coeffs):
        if m % n:
            if not mat_is_zero(c):
                raise ValidationError(
                    "projective-space series is not a function of q^N"
                )
            scaled.append(c)
        else:
            scaled.append(mat_scale(eps ** (m // n), c))
    big = lambda_group_series(basis, scaled, order)
    shift = Fraction(ctx.p) ** sat.shift_exponent
    coeffs = tuple(mat_scale(shift, c) for c in big)
    return FrobeniusSolution(ctx, conn, order, coeffs, provenance="exterior-power")


@dataclass(frozen=True)
class SatakeComparison:
    k: int
    n: int
    order: int
    ok: bool
    first_mismatch: tuple | None  # (m, i, j) of the first differing entry


def satake_compare(ctx: PrimeContext, k: int, n: int, order: int) -> SatakeComparison:
    """Direct solve vs exterior-power construction, exact coefficientwise."""
    direct = grassmannian_direct(ctx, k, n, order)
    ext = grassmannian_frobenius(ctx, k, n, order)
    for m in range(order + 1):
        a, b = direct.coeffs[m], ext.coeffs[m]
        for i in range(len(a)):
            for j in range(len(a)):
                if a[i][j] != b[i][j]:
                    return SatakeComparison(k, n, order, False, (m, i, j))
    return SatakeComparison(k, n, order, True, None)
