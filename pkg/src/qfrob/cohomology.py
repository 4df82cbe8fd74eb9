"""Small graded commutative rings, Chern character data, and Gamma classes.

A ring is given by a finite homogeneous basis with rational structure
constants.  Elements are coordinate tuples whose entries are Fractions or
GammaPoly (so Gamma classes stay symbolic in the odd derivative symbols).
The Gamma class of a bundle with Chern character ch is

    exp( sum over odd m of  l_m * ch_m )

where l_m are the log-Gamma coefficients; even l_m vanish identically once
even derivatives are eliminated, so only odd m contribute.  The associated
constant-term endomorphism scales the source basis vector by p^(-deg/2)
and then cups:  Phi_0(x) = p^(-deg(x)/2) (b cup x), which for ANY cup
class b satisfies the intertwining A_0 Phi_0 = p Phi_0 A_0 against the
classical multiplication A_0 = c_1 cup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .gammasym import GammaPoly
from .special import log_gamma_polys
from .valuation import PrimeContext

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CohomologyRing:
    """Unital graded basis with structure constants products[i][j] = b_i b_j."""

    labels: tuple
    degrees: tuple
    products: tuple  # products[i][j] = coordinate tuple of b_i * b_j
    dim_c: int

    @property
    def rank(self) -> int:
        return len(self.labels)

    def unit(self) -> tuple:
        return tuple(Fraction(1) if i == 0 else _ZERO for i in range(self.rank))

    def validate(self) -> None:
        r = self.rank
        if len(self.degrees) != r or len(self.products) != r:
            raise ValidationError("ring tables do not match the basis size")
        if self.degrees[0] != 0 or any(d == 0 for d in self.degrees[1:]):
            raise ValidationError("need exactly one degree-0 basis element, first")
        if any(d % 2 != 0 or d < 0 for d in self.degrees):
            raise ValidationError("basis degrees must be even and nonnegative")
        for i in range(r):
            for j in range(r):
                v = self.products[i][j]
                if len(v) != r:
                    raise ValidationError(f"product ({i},{j}) has wrong length")
                if v != self.products[j][i]:
                    raise ValidationError(f"product not commutative at ({i},{j})")
                target = self.degrees[i] + self.degrees[j]
                for t, c in enumerate(v):
                    if c and self.degrees[t] != target:
                        raise ValidationError(
                            f"product ({i},{j}) not homogeneous at coordinate {t}"
                        )
            if self.products[0][i] != tuple(
                Fraction(1) if t == i else _ZERO for t in range(r)
            ):
                raise ValidationError(f"basis element 0 is not a unit at {i}")
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    left = self.multiply(self.products[i][j], self._basis(k))
                    right = self.multiply(self._basis(i), self.products[j][k])
                    if left != right:
                        raise ValidationError(f"not associative at ({i},{j},{k})")

    def basis_element(self, i: int) -> tuple:
        return tuple(Fraction(1) if t == i else _ZERO for t in range(self.rank))

    _basis = basis_element

    def multiply(self, u: tuple, v: tuple) -> tuple:
        r = self.rank
        out = [0] * r
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for t, s in enumerate(self.products[i][j]):
                    if s:
                        out[t] = out[t] + c * s
        return tuple(x if not isinstance(x, int) else _ZERO for x in out)

    def cup_matrix(self, v: tuple) -> tuple:
        """Matrix of cup-multiplication by v, columns indexed by the basis."""
        r = self.rank
        cols = [self.multiply(v, self._basis(j)) for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class ChernCharacterData:
    """Chern character components ch_m (m >= 1) as ring coordinates."""

    ring: CohomologyRing
    components: tuple  # tuple of (m, coords)

    def component(self, m: int) -> tuple:
        for mm, v in self.components:
            if mm == m:
                return v
        return tuple(_ZERO for _ in range(self.ring.rank))

    def dual(self) -> "ChernCharacterData":
        """Chern character of the dual bundle: ch_m -> (-1)^m ch_m."""
        flipped = tuple(
            (m, v if m % 2 == 0 else tuple(-x for x in v)) for m, v in self.components
        )
        return ChernCharacterData(self.ring, flipped)

    def validate(self) -> None:
        for m, v in self.components:
            if m < 1:
                raise ValidationError("Chern character components start at m = 1")
            for t, c in enumerate(v):
                if c and self.ring.degrees[t] != 2 * m:
                    raise ValidationError(f"ch_{m} not of pure degree {2 * m}")


def chern_to_ch(ring: CohomologyRing, chern: dict) -> ChernCharacterData:
    """Newton's identities: total Chern classes c_m -> character components.

    p_1 = e_1 and p_m = e_1 p_{m-1} - e_2 p_{m-2} + ... + (-1)^(m-1) m e_m,
    then ch_m = p_m / m!.
    """
    m_max = max((d for d in ring.degrees), default=0) // 2
    zero = tuple(_ZERO for _ in range(ring.rank))
    e = {m: tuple(Fraction(x) for x in chern.get(m, zero)) for m in range(1, m_max + 1)}
    p = {}
    for m in range(1, m_max + 1):
        acc = tuple(Fraction((-1) ** (m - 1) * m) * x for x in e[m])
        for i in range(1, m):
            sign = Fraction((-1) ** (i - 1))
            term = ring.multiply(e[i], p[m - i])
            acc = tuple(a + sign * t for a, t in zip(acc, term))
        p[m] = acc
    comps = []
    for m in range(1, m_max + 1):
        coords = tuple(x / math.factorial(m) for x in p[m])
        if any(coords):
            comps.append((m, coords))
    return ChernCharacterData(ring, tuple(comps))


def gamma_class(ring: CohomologyRing, ch: ChernCharacterData) -> tuple:
    """Coordinates of exp(sum over odd m of l_m ch_m), entries GammaPoly."""
    r = ring.rank
    odd_orders = sorted(m for m, v in ch.components if m % 2 == 1 and any(v))
    l_polys = log_gamma_polys(max(odd_orders, default=1))
    x = [GammaPoly.zero() for _ in range(r)]
    for m in odd_orders:
        lm = l_polys[m]
        for t, c in enumerate(ch.component(m)):
            if c:
                x[t] = x[t] + lm * c
    out = [GammaPoly.const(1) if i == 0 else GammaPoly.zero() for i in range(r)]
    power = [GammaPoly.const(1) if i == 0 else GammaPoly.zero() for i in range(r)]
    j = 1
    while True:
        power = ring.multiply(power, tuple(x))
        if not any(power):
            break
        inv = Fraction(1, math.factorial(j))
        out = [o + pw * inv for o, pw in zip(out, power)]
        j += 1
        if j > r + 1:
            raise ValidationError("Gamma-class exponential did not terminate")
    return tuple(out)


@dataclass(frozen=True)
class GammaMonomialDecomposition:
    """Gamma class split along the basis: sum over items of poly * basis elt."""

    ring: CohomologyRing
    items: tuple  # tuple of (GammaPoly, basis index)

    def reconstruct(self) -> tuple:
        out = [GammaPoly.zero() for _ in range(self.ring.rank)]
        for poly, idx in self.items:
            out[idx] = out[idx] + poly
        return tuple(out)


def gamma_monomial_decomposition(
    ring: CohomologyRing, gamma: tuple
) -> GammaMonomialDecomposition:
    items = []
    for idx, coord in enumerate(gamma):
        poly = coord if isinstance(coord, GammaPoly) else GammaPoly.const(coord)
        if poly:
            items.append((poly, idx))
    return GammaMonomialDecomposition(ring, tuple(items))


def constant_term_endomorphism(
    ctx: PrimeContext, ring: CohomologyRing, b: tuple, degrees: tuple | None = None
) -> tuple:
    """Matrix of x -> p^(-deg(x)/2) (b cup x); columns scale by the source degree.

    Invertible exactly when the degree-0 coordinate of b is nonzero.  The
    optional `degrees` override supports blocks whose recorded degrees are
    shifted relative to the ring presentation.
    """
    degs = degrees if degrees is not None else ring.degrees
    if len(degs) != ring.rank:
        raise ValidationError("degree override has wrong length")
    if any(d % 2 != 0 for d in degs):
        raise ValidationError("degrees must be even")
    cup = ring.cup_matrix(b)
    r = ring.rank
    return tuple(
        tuple(cup[i][j] * Fraction(ctx.p) ** (-(degs[j] // 2)) for j in range(r))
        for i in range(r)
    )
