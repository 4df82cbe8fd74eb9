"""Static figure rendering for profiles and Newton polygons (Agg backend)."""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .valuation import INDETERMINATE, INF


def render_profile(path: str, profile, fit=None) -> None:
    """Scatter of (m, -val) with the dashed comparison line m/(p-1)."""
    xs, ys = [], []
    skipped = 0
    for m, v in profile.entries:
        if v is INF or v is INDETERMINATE:
            skipped += 1
            continue
        xs.append(m)
        ys.append(float(-v))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(xs, ys, ".", markersize=4, label="-val of coefficient")
    top = profile.order
    ref = float(profile.ctx.pi_val)
    ax.plot([0, top], [0, top * ref], "--", linewidth=1, label="m/(p-1)")
    if fit is not None:
        lo, hi = fit.window
        ax.plot(
            [lo, hi],
            [float(fit.intercept + fit.slope * lo), float(fit.intercept + fit.slope * hi)],
            "-",
            linewidth=1,
            label=f"fit slope {float(fit.slope):.4f}",
        )
    ax.set_xlabel("m")
    ax.set_ylabel("-val")
    ax.set_title(f"{profile.name}, p = {profile.ctx.p}")
    ax.legend(loc="upper left", fontsize=8)
    if skipped:
        ax.annotate(
            f"{skipped} entries without finite certified value",
            xy=(0.98, 0.02),
            xycoords="axes fraction",
            ha="right",
            fontsize=7,
        )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_newton(path: str, polygon, title: str) -> None:
    """Input points plus the lower convex hull through its vertices."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    px = [float(Fraction(x)) for x, _ in polygon.points]
    py = [float(y) for _, y in polygon.points]
    ax.plot(px, py, "o", markersize=5, label="(k, val)")
    vx = [float(Fraction(x)) for x, _ in polygon.vertices]
    vy = [float(y) for _, y in polygon.vertices]
    ax.plot(vx, vy, "-s", markersize=4, linewidth=1.2, label="lower hull")
    ax.set_xlabel("coefficient index")
    ax.set_ylabel("valuation")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
