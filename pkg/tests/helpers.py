"""Shared test utilities: numeric solution assembly and zero checks."""

from fractions import Fraction
from functools import lru_cache

from qfrob.approx import ApproxPadic
from qfrob.connection import combine_basis_solutions, solve_frobenius_basis
from qfrob.registry import builtin
from qfrob.special import gamma_derivatives
from qfrob.valuation import PrimeContext


def needed_orders(conn):
    orders = set()
    for poly, _ in conn.decomposition:
        for mono, _c in poly.sorted_terms():
            for order, _e in mono:
                orders.add(order)
    return tuple(sorted(orders))


def gamma_values(ctx, conn, precision):
    orders = needed_orders(conn)
    der = gamma_derivatives(ctx, max(orders, default=1), Fraction(precision))
    return {k: der.values[k] for k in orders}


@lru_cache(maxsize=None)
def combined_solution(name, p, order, precision):
    """Numeric Frobenius expansion of a builtin; cached across test modules."""
    conn = builtin(name)
    ctx = PrimeContext(p)
    sols = solve_frobenius_basis(ctx, conn, order)
    return combine_basis_solutions(ctx, conn, sols, gamma_values(ctx, conn, precision))


def vanishes(x):
    """Exact zero, or an approximation whose rational part is exactly zero."""
    if not x:
        return True
    return isinstance(x, ApproxPadic) and x.approx == 0


def mat_vanishes(a):
    return all(vanishes(x) for row in a for x in row)
