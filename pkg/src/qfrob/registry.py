"""Built-in example connections with their rings and Gamma decompositions.

Each builder assembles the same package of data: a small cohomology ring,
the odd Chern character components of the tangent bundle in that ring, the
quantum connection matrices in q d/dq form, and the induced Gamma-class
decomposition (one cup matrix per basis element carrying a nonzero Gamma
coordinate).  Matrices are stored against the weight-2 power normalization:
the q-power of a coefficient is fixed by the grading rule
deg_i = deg_j + 2 - 2m, so a minimal Chern number k shows up as support in
powers divisible by k.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .cohomology import (
    ChernCharacterData,
    CohomologyRing,
    gamma_class,
    gamma_monomial_decomposition,
)
from .connection import Connection
from .errors import ValidationError

_ZERO = Fraction(0)


def _mat(rows) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _zeros(r: int) -> tuple:
    return tuple(tuple(_ZERO for _ in range(r)) for _ in range(r))


def _sparse(r: int, entries: dict) -> tuple:
    return tuple(
        tuple(Fraction(entries.get((i, j), 0)) for j in range(r)) for i in range(r)
    )


def _betti(degrees: tuple) -> tuple:
    hist = {}
    for d in degrees:
        hist[d] = hist.get(d, 0) + 1
    return tuple(sorted(hist.items()))


def _assemble(
    name: str,
    ring: CohomologyRing,
    ch: ChernCharacterData,
    coeffs: tuple,
    degrees: tuple | None = None,
    dim_c: int | None = None,
) -> Connection:
    ring.validate()
    ch.validate()
    gamma = gamma_class(ring, ch)
    decomp = gamma_monomial_decomposition(ring, gamma)
    pairs = tuple(
        (poly, ring.cup_matrix(ring.basis_element(idx))) for poly, idx in decomp.items
    )
    degs = ring.degrees if degrees is None else degrees
    conn = Connection(
        name=name,
        rank=ring.rank,
        coeffs=coeffs,
        degrees=degs,
        dim_c=ring.dim_c if dim_c is None else dim_c,
        betti=_betti(degs),
        decomposition=pairs,
    )
    conn.validate()
    return conn


# -- projective spaces ----------------------------------------------------


def truncated_power_ring(n: int, dim_c: int, symbol: str = "x") -> CohomologyRing:
    """Q[x]/(x^n) with basis 1, x, ..., x^(n-1) in degrees 0, 2, ..."""
    labels = tuple("1" if i == 0 else f"{symbol}^{i}" if i > 1 else symbol for i in range(n))
    degrees = tuple(2 * i for i in range(n))
    zero = tuple(_ZERO for _ in range(n))
    products = tuple(
        tuple(
            tuple(Fraction(1) if t == i + j else _ZERO for t in range(n))
            if i + j < n
            else zero
            for j in range(n)
        )
        for i in range(n)
    )
    return CohomologyRing(labels, degrees, products, dim_c)


@lru_cache(maxsize=None)
def projective_space_ring(n: int) -> CohomologyRing:
    return truncated_power_ring(n, n - 1)


@lru_cache(maxsize=None)
def projective_space_ch(n: int) -> ChernCharacterData:
    # n Chern roots equal to the hyperplane class: ch_m = n x^m / m!
    ring = projective_space_ring(n)
    comps = []
    for m in range(1, n):
        coords = tuple(
            Fraction(n, math.factorial(m)) if t == m else _ZERO for t in range(n)
        )
        comps.append((m, coords))
    return ChernCharacterData(ring, tuple(comps))


@lru_cache(maxsize=None)
def projective_space_gamma(n: int) -> tuple:
    return gamma_class(projective_space_ring(n), projective_space_ch(n))


def _cp_connection(n: int, name: str) -> Connection:
    ring = projective_space_ring(n)
    a0 = _sparse(n, {(i + 1, i): n for i in range(n - 1)})
    an = _sparse(n, {(0, n - 1): n})
    coeffs = (a0,) + tuple(_zeros(n) for _ in range(n - 1)) + (an,)
    return _assemble(name, ring, projective_space_ch(n), coeffs)


# -- surfaces and threefolds ----------------------------------------------


def _cubic_surface() -> Connection:
    # invariant part {1, c, pt} of the cubic surface, c*c = 3 pt
    zero = (_ZERO, _ZERO, _ZERO)
    e = lambda i: tuple(Fraction(1) if t == i else _ZERO for t in range(3))
    products = (
        (e(0), e(1), e(2)),
        (e(1), (_ZERO, _ZERO, Fraction(3)), zero),
        (e(2), zero, zero),
    )
    ring = CohomologyRing(("1", "c", "pt"), (0, 2, 4), products, 2)
    ch = ChernCharacterData(ring, ((1, (_ZERO, Fraction(1), _ZERO)),))
    coeffs = (
        _mat([[0, 0, 0], [1, 0, 0], [0, 3, 0]]),
        _mat([[0, 0, 0], [0, 9, 0], [0, 0, 0]]),
        _mat([[0, 108, 0], [0, 0, 36], [0, 0, 0]]),
        _mat([[0, 0, 252], [0, 0, 0], [0, 0, 0]]),
    )
    return _assemble("cubic-surface", ring, ch, coeffs)


def _hirzebruch_f1() -> Connection:
    # basis {1, e, f, pt}: e*e = -pt, e*f = pt, f*f = 0, c_1 = 2e + 3f
    zero = tuple(_ZERO for _ in range(4))
    e = lambda i: tuple(Fraction(1) if t == i else _ZERO for t in range(4))
    pt = e(3)
    neg_pt = tuple(-x for x in pt)
    products = (
        (e(0), e(1), e(2), e(3)),
        (e(1), neg_pt, pt, zero),
        (e(2), pt, zero, zero),
        (e(3), zero, zero, zero),
    )
    ring = CohomologyRing(("1", "e", "f", "pt"), (0, 2, 2, 4), products, 2)
    ch = ChernCharacterData(ring, ((1, (_ZERO, Fraction(2), Fraction(3), _ZERO)),))
    coeffs = (
        _mat([[0, 0, 0, 0], [2, 0, 0, 0], [3, 0, 0, 0], [0, 1, 2, 0]]),
        _mat([[0, 0, 0, 0], [0, -1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
        _mat([[0, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2], [0, 0, 0, 0]]),
        _mat([[0, 0, 0, 3], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    )
    return _assemble("f1", ring, ch, coeffs)


def _two_quadrics() -> Connection:
    # intersection of two quadrics in P^5; integer generators u1 = x,
    # u2 = x^2/4, u3 = x^3/4, so u1*u1 = 4 u2, u1*u2 = u3
    zero = tuple(_ZERO for _ in range(4))
    e = lambda i: tuple(Fraction(1) if t == i else _ZERO for t in range(4))
    products = (
        (e(0), e(1), e(2), e(3)),
        (e(1), (_ZERO, _ZERO, Fraction(4), _ZERO), e(3), zero),
        (e(2), e(3), zero, zero),
        (e(3), zero, zero, zero),
    )
    ring = CohomologyRing(("1", "u1", "u2", "u3"), (0, 2, 4, 6), products, 3)
    # c(TM) = (1+x)^6 (1+2x)^{-2}: c1 = 2x, c2 = 3x^2, c3 = 0, hence
    # ch1 = 2 u1, ch3 = -(5/3) x^3 = -(20/3) u3
    ch = ChernCharacterData(
        ring,
        (
            (1, (_ZERO, Fraction(2), _ZERO, _ZERO)),
            (3, (_ZERO, _ZERO, _ZERO, Fraction(-20, 3))),
        ),
    )
    coeffs = (
        _mat([[0, 0, 0, 0], [2, 0, 0, 0], [0, 8, 0, 0], [0, 0, 2, 0]]),
        _zeros(4),
        _mat([[0, 8, 0, 0], [0, 0, 4, 0], [0, 0, 0, 8], [0, 0, 0, 0]]),
        _zeros(4),
        _mat([[0, 0, 0, 8], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    )
    return _assemble("two-quadrics", ring, ch, coeffs)


# -- twistor blocks -------------------------------------------------------


def _twistor_simple(d: int) -> Connection:
    # rank-4 block y, y c, y c^2, y c^3 with the Euler class acting by 0;
    # the degree shift d only rescales the constant term by p^(-d/2)
    if d not in (0, 2, 4):
        raise ValidationError(f"twistor-simple degree must be 0, 2 or 4, got {d}")
    ring = truncated_power_ring(4, 3, symbol="c")
    ch = ChernCharacterData(
        ring,
        (
            (1, (_ZERO, Fraction(1), _ZERO, _ZERO)),
            (3, (_ZERO, _ZERO, _ZERO, Fraction(1, 6))),
        ),
    )
    coeffs = (
        _sparse(4, {(1, 0): 1, (2, 1): 1, (3, 2): 1}),
        _zeros(4),
        _sparse(4, {(0, 1): 4, (2, 3): 4}),
    )
    degrees = tuple(d + 2 * i for i in range(4))
    return _assemble(
        f"twistor-simple({d})", ring, ch, coeffs, degrees=degrees, dim_c=3 + d // 2
    )


def _twistor_big() -> Connection:
    # basis 1, c, c^2, c^3, E, Ec, Ec^2, Ec^3 with c^4 = 8 Ec and E^2 = 0
    r = 8

    def coords(pairs) -> tuple:
        out = [_ZERO] * r
        for idx, v in pairs:
            out[idx] = Fraction(v)
        return tuple(out)

    def times_c(idx: int, power: int):
        # basis index of c^power * (basis idx), with the c^4 = 8 Ec wrap
        a, e_part = (idx, 0) if idx < 4 else (idx - 4, 1)
        a += power
        scale = 1
        if a >= 4:
            if e_part:
                return None
            a, e_part, scale = a - 3, 1, 8
        if a >= 4:
            return None
        return coords([(a + 4 * e_part, scale)])

    zero = tuple(_ZERO for _ in range(r))
    products = []
    for i in range(r):
        row = []
        for j in range(r):
            if i >= 4 and j >= 4:
                row.append(zero)
                continue
            if i >= 4 or j >= 4:
                e_idx, c_idx = (i, j) if i >= 4 else (j, i)
                v = times_c(e_idx, c_idx)
            else:
                v = times_c(i, j)
            row.append(v if v is not None else zero)
        products.append(tuple(row))
    ring = CohomologyRing(
        ("1", "c", "c^2", "c^3", "E", "Ec", "Ec^2", "Ec^3"),
        (0, 2, 4, 6, 6, 8, 10, 12),
        tuple(products),
        6,
    )
    ch = ChernCharacterData(
        ring,
        (
            (1, coords([(1, 1)])),
            (3, coords([(3, Fraction(1, 6)), (4, -1)])),
            (5, coords([(6, Fraction(-7, 120))])),
        ),
    )
    coeffs = (
        _sparse(
            r,
            {(1, 0): 1, (2, 1): 1, (3, 2): 1, (5, 4): 1, (6, 5): 1, (7, 6): 1, (5, 3): 8},
        ),
        _zeros(r),
        _sparse(r, {(0, 1): 4, (2, 3): 4, (4, 5): 4, (6, 7): 4}),
    )
    return _assemble("twistor-big", ring, ch, coeffs)


# -- lookup ---------------------------------------------------------------

_FIXED = {
    "cubic-surface": _cubic_surface,
    "f1": _hirzebruch_f1,
    "two-quadrics": _two_quadrics,
    "twistor-big": _twistor_big,
}


@lru_cache(maxsize=None)
def builtin(name: str) -> Connection:
    """Look up a built-in connection by name; parametrized families allowed."""
    if name == "cp1":
        return _cp_connection(2, "cp1")
    if name in _FIXED:
        return _FIXED[name]()
    if name == "twistor-simple":
        return _twistor_simple(0)
    m = re.fullmatch(r"cp\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ValidationError("cp(N) needs N >= 2")
        return _cp_connection(n, name)
    m = re.fullmatch(r"twistor-simple\((\d+)\)", name)
    if m:
        return _twistor_simple(int(m.group(1)))
    m = re.fullmatch(r"grassmannian\((\d+),(\d+)\)", name)
    if m:
        from .satake import grassmannian_connection

        return grassmannian_connection(int(m.group(1)), int(m.group(2)))
    raise ValidationError(f"unknown connection name {name!r}")


def list_builtins() -> tuple:
    """Canonical names; cp(N), twistor-simple(d), grassmannian(k,N) are open families."""
    return (
        "cp1",
        "cp(3)",
        "cp(4)",
        "cubic-surface",
        "f1",
        "two-quadrics",
        "twistor-simple(0)",
        "twistor-simple(2)",
        "twistor-simple(4)",
        "twistor-big",
        "grassmannian(2,4)",
    )
