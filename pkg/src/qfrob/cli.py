"""Command-line front end: profiles, Newton polygons, Gamma tables, Satake checks.

Exit codes: 0 success, 2 precision failure (raise --precision), 3 validation
failure, 4 comparison failure.  CSV outputs are byte-identical across runs
with the same configuration; figures are rendered next to them.
"""

from __future__ import annotations

import csv
import functools
import os
import re
from fractions import Fraction

import click

from .analysis import (
    betti_comparison,
    char_poly,
    char_poly_newton,
    growth_rate_fit,
    profile_csv_rows,
    valuation_profile,
)
from .connection import combine_basis_solutions, solve_frobenius_basis
from .errors import ComparisonError, PrecisionError, QfrobError, ValidationError
from .fileformat import parse_connection
from .figures import render_newton, render_profile
from .registry import builtin, list_builtins
from .satake import satake_compare
from .special import gamma_derivatives
from .valuation import INDETERMINATE, PrimeContext

_SCHEDULE = (16, 32, 64, 128)


def _guard(fn):
    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except QfrobError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(exc.exit_code)

    return inner


def _load_connection(selector: str):
    try:
        return builtin(selector)
    except ValidationError:
        if os.path.isfile(selector):
            with open(selector, "r", encoding="utf-8") as fh:
                return parse_connection(fh.read())
        raise ValidationError(
            f"{selector!r} is neither a built-in connection nor a readable file"
        )


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", name).strip("-")


def _parse_window(window: str) -> tuple:
    m = re.fullmatch(r"(\d+):(\d+)", window)
    if not m:
        raise ValidationError(f"window must look like LO:HI, got {window!r}")
    return int(m.group(1)), int(m.group(2))


def _needed_orders(conn) -> tuple:
    orders = set()
    for poly, _ in conn.decomposition:
        for mono, _c in poly.sorted_terms():
            for order, _e in mono:
                orders.add(order)
    return tuple(sorted(orders))


def _gamma_values(ctx: PrimeContext, conn, precision: int) -> dict:
    orders = _needed_orders(conn)
    k_max = max(orders, default=1)
    der = gamma_derivatives(ctx, k_max, Fraction(precision))
    return {k: der.values[k] for k in orders}


def _schedule(precision) -> tuple:
    return (precision,) if precision else _SCHEDULE


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


@click.group()
def main():
    """Exact p-adic Frobenius structures for small quantum connections."""


@main.command()
@click.option("--prime", "-p", "primes", multiple=True, type=int, required=True)
@click.option("--kmax", "-k", type=int, default=4, show_default=True)
@click.option("--precision", "-G", type=int, default=8, show_default=True)
@_guard
def gamma(primes, kmax, precision):
    """Print Gamma derivative approximations at 0 with certified error."""
    if kmax < 0 or precision < 1:
        raise ValidationError("need kmax >= 0 and precision >= 1")
    for p in primes:
        ctx = PrimeContext(p)
        der = gamma_derivatives(ctx, kmax, Fraction(precision))
        click.echo(f"p = {p}, certified err_val >= {precision}")
        for k in range(kmax + 1):
            v = der.values[k]
            click.echo(
                f"  k = {k}  truncation M = {der.truncations[k]}  "
                f"value = {v.approx}  err_val >= {v.err}"
            )


@main.command()
@click.option("--connection", "-c", required=True, help="built-in name or file path")
@click.option("--prime", "-p", "primes", multiple=True, type=int, required=True)
@click.option("--order", "-N", type=int, default=60, show_default=True)
@click.option("--precision", "-G", type=int, default=None, help="fixed precision (default: escalate 16..128)")
@click.option("--window", default="20:60", show_default=True, help="fit window LO:HI")
@click.option("--out", "-o", default=".", type=click.Path(file_okay=False))
@_guard
def profile(connection, primes, order, precision, window, out):
    """Valuation profile CSV, growth-rate fit summary, and figure per prime."""
    conn = _load_connection(connection)
    lo, hi = _parse_window(window)
    os.makedirs(out, exist_ok=True)
    slug = _slug(conn.name)
    precision_failures = []
    for p in primes:
        ctx = PrimeContext(p)
        sols = solve_frobenius_basis(ctx, conn, order)
        prof = None
        used = None
        for g in _schedule(precision):
            sol = combine_basis_solutions(ctx, conn, sols, _gamma_values(ctx, conn, g))
            prof = valuation_profile(ctx, sol)
            used = g
            if all(v is not INDETERMINATE for _, v in prof.entries):
                break
        base = os.path.join(out, f"{slug}-p{p}")
        _write_csv(
            f"{base}-profile.csv",
            ("m", "neg_val_num", "neg_val_den", "neg_val_float", "certified"),
            profile_csv_rows(prof),
        )
        fit = None
        try:
            fit = growth_rate_fit(prof, (lo, hi))
        except PrecisionError as exc:
            precision_failures.append(f"p={p}: {exc}")
        if fit is not None:
            _write_csv(
                f"{base}-summary.csv",
                (
                    "prime",
                    "order",
                    "precision",
                    "window_lo",
                    "window_hi",
                    "points",
                    "sigma",
                    "intercept",
                    "reference_slope",
                ),
                [
                    (
                        p,
                        order,
                        used,
                        lo,
                        hi,
                        fit.count,
                        repr(float(fit.slope)),
                        repr(float(fit.intercept)),
                        repr(float(fit.reference)),
                    )
                ],
            )
            click.echo(
                f"{conn.name} p={p} N={order} G={used}: sigma = {float(fit.slope):.4f} "
                f"(reference m/(p-1) slope {float(fit.reference):.4f})"
            )
        render_profile(f"{base}-profile.png", prof, fit)
    if precision_failures:
        raise PrecisionError("; ".join(precision_failures))


def _certified_newton(ctx: PrimeContext, conn, order, precision):
    sols = solve_frobenius_basis(ctx, conn, order)
    last_exc = None
    for g in _schedule(precision):
        sol = combine_basis_solutions(ctx, conn, sols, _gamma_values(ctx, conn, g))
        try:
            polygon, reports = char_poly_newton(char_poly(sol))
        except PrecisionError as exc:
            last_exc = exc
            continue
        return g, polygon, reports
    raise last_exc


def _format_point(pt) -> str:
    x, y = pt
    return f"({x},{y})"


def _newton_lines(conn, p, order, used, polygon, reports, comparison, theta_report):
    lines = [
        f"connection: {conn.name}",
        f"prime: {p}",
        f"order: {order}",
        f"precision: {used}",
        f"tentative: {'true' if polygon.tentative else 'false'}",
        "vertices: " + " ".join(_format_point(v) for v in polygon.vertices),
        "slopes: " + ", ".join(f"{s} x{mult}" for s, mult in polygon.slopes),
        "betti degrees/2: " + ", ".join(str(x) for x in comparison.expected),
        f"betti match: {'PASS' if comparison.ok else 'FAIL'}",
    ]
    if not comparison.ok:
        lines.append("slope multiset: " + ", ".join(str(x) for x in comparison.actual))
    if theta_report:
        lines.append("theta-report:")
        for k, rep in enumerate(reports):
            lines.append(
                f"  k={k} value={rep.value} tentative={'true' if rep.tentative else 'false'}"
            )
            for cls in rep.classes:
                lines.append(
                    f"    residue {cls.residue}: offset {cls.offset} value {cls.value} "
                    f"floor {cls.floor} certified {'true' if cls.certified else 'false'}"
                )
    return lines


@main.command()
@click.option("--connection", "-c", required=True, help="built-in name or file path")
@click.option("--prime", "-p", "primes", multiple=True, type=int, required=True)
@click.option("--order", "-N", type=int, default=60, show_default=True)
@click.option("--precision", "-G", type=int, default=None, help="fixed precision (default: escalate 16..128)")
@click.option("--theta-report", is_flag=True, help="include per-residue-class detail")
@click.option("--out", "-o", default=".", type=click.Path(file_okay=False))
@_guard
def newton(connection, primes, order, precision, theta_report, out):
    """Newton polygon of the characteristic polynomial at q = pi*theta."""
    conn = _load_connection(connection)
    os.makedirs(out, exist_ok=True)
    slug = _slug(conn.name)
    mismatches = []
    for p in primes:
        ctx = PrimeContext(p)
        used, polygon, reports = _certified_newton(ctx, conn, order, precision)
        comparison = betti_comparison(polygon, conn)
        lines = _newton_lines(
            conn, p, order, used, polygon, reports, comparison, theta_report
        )
        base = os.path.join(out, f"{slug}-p{p}")
        with open(f"{base}-newton.txt", "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        render_newton(f"{base}-newton.png", polygon, f"{conn.name}, p = {p}")
        for line in lines:
            click.echo(line)
        if not comparison.ok:
            mismatches.append(f"p={p}")
    if mismatches:
        raise ComparisonError(
            f"Newton slopes disagree with Betti numbers at {', '.join(mismatches)}"
        )


@main.command()
@click.option("--k", "k", type=int, required=True, help="wedge degree")
@click.option("--n", "n", type=int, required=True, help="ambient dimension N of Gr(k,N)")
@click.option("--prime", "-p", "primes", multiple=True, type=int, required=True)
@click.option("--order", "-N", type=int, default=20, show_default=True)
@click.option("--precision", "-G", type=int, default=None)
@click.option("--theta-report", is_flag=True)
@click.option("--out", "-o", default=None, type=click.Path(file_okay=False))
@_guard
def satake(k, n, primes, order, precision, theta_report, out):
    """Compare the direct Grassmannian solve with the exterior-power build."""
    conn = builtin(f"grassmannian({k},{n})")
    slug = _slug(conn.name)
    if out:
        os.makedirs(out, exist_ok=True)
    mismatch = None
    precision_failure = None
    for p in primes:
        ctx = PrimeContext(p)
        cmp = satake_compare(ctx, k, n, order)
        if cmp.ok:
            click.echo(
                f"Gr({k},{n}) p={p} order {order}: PASS, "
                "direct and exterior-power series agree exactly"
            )
        else:
            m, i, j = cmp.first_mismatch
            click.echo(
                f"Gr({k},{n}) p={p} order {order}: FAIL, "
                f"first differing coefficient at q^{m} entry ({i},{j})"
            )
            mismatch = mismatch or f"p={p} q^{m} ({i},{j})"
        lines = []
        try:
            used, polygon, reports = _certified_newton(ctx, conn, order, precision)
            comparison = betti_comparison(polygon, conn)
            lines = _newton_lines(
                conn, p, order, used, polygon, reports, comparison, theta_report
            )
        except PrecisionError as exc:
            precision_failure = precision_failure or str(exc)
            lines = [f"slope report unavailable (precision): {exc}"]
        for line in lines:
            click.echo(line)
        if out:
            with open(
                os.path.join(out, f"{slug}-p{p}-satake.txt"), "w", encoding="utf-8"
            ) as fh:
                fh.write("\n".join(lines) + "\n")
    if mismatch:
        raise ComparisonError(f"constructions disagree: first at {mismatch}")
    if precision_failure:
        raise PrecisionError(precision_failure)


@main.command(name="list")
@_guard
def list_cmd():
    """List the built-in connections (cp(N), twistor-simple(d), grassmannian(k,N) are open families)."""
    for name in list_builtins():
        click.echo(name)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_guard
def validate(path):
    """Parse and validate a connection file, reporting precise diagnostics."""
    with open(path, "r", encoding="utf-8") as fh:
        conn = parse_connection(fh.read())
    click.echo(
        f"OK: {conn.name} rank {conn.rank}, top power {conn.degree}, "
        f"{len(conn.decomposition)} decomposition terms"
    )


if __name__ == "__main__":
    main()
