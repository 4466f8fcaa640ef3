"""Figure rendering for the report path.

Each scan can render a PNG next to its CSV (opt-in via --figures).  Figures
are inspection aids over the same records the CSV carries; the CSV remains
the canonical artifact and is byte-deterministic independently of plotting.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_scan_figure(records, path):
    """Normalized sum size and bound ratio against p, one series per set pair."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    series = {}
    for r in records:
        if r.flag:
            continue
        label = f"{r.set_a} / {r.set_b}" + (f" / {r.set_c}" if r.set_c else "")
        series.setdefault(label, []).append(r)
    for label, recs in sorted(series.items()):
        recs = sorted(recs, key=lambda r: (r.p, r.seed))
        xs = [r.p for r in recs]
        norm = [r.size_a * r.size_b * max(1, r.size_c) for r in recs]
        ax1.plot(xs, [r.lhs / n for r, n in zip(recs, norm)], "o-", ms=3, label=label)
        pts = [(r.p, r.ratio) for r in recs if r.ratio is not None]
        if pts:
            ax2.plot([p for p, _ in pts], [v for _, v in pts], "o-", ms=3, label=label)
    ax1.set_xlabel("p")
    ax1.set_ylabel("|sum| / product of sizes")
    ax1.set_xscale("log")
    ax2.set_xlabel("p")
    ax2.set_ylabel("|sum| / bound kernel")
    ax2.set_xscale("log")
    if series:
        ax1.legend(fontsize=6)
    return _finish(fig, path)


def render_weil_figure(records, path):
    """|complete sum| against the (m-1) sqrt(p) line, split by root count."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for m in sorted({r.m for r in records}):
        pts = [(r.bound, r.abs_sum) for r in records if r.m == m and r.applicable]
        if pts:
            ax.plot([b for b, _ in pts], [a for _, a in pts], ".", ms=3, label=f"m={m}")
    top = max((r.bound for r in records), default=1.0)
    ax.plot([0, top], [0, top], "k--", lw=0.8, label="bound")
    ax.set_xlabel("(m-1) sqrt(p)")
    ax.set_ylabel("|sum chi(f(x))|")
    ax.legend(fontsize=7)
    return _finish(fig, path)


def render_davenport_figure(records, path):
    """Moment value against its explicit bound, log-log."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for r_order in sorted({r.r for r in records}):
        pts = [(r.bound, r.value_direct) for r in records if r.r == r_order]
        ax.loglog([b for b, _ in pts], [v for _, v in pts], ".", ms=4, label=f"r={r_order}")
    bounds = [r.bound for r in records]
    if bounds:
        lo, hi = min(bounds), max(bounds)
        ax.loglog([lo, hi], [lo, hi], "k--", lw=0.8, label="bound")
    ax.set_xlabel("explicit bound")
    ax.set_ylabel("moment value")
    ax.legend(fontsize=7)
    return _finish(fig, path)


def render_period_figure(records, path):
    """Observed period count against epsilon with the predicted floor dashed."""
    fig, ax = plt.subplots(figsize=(5.5, 4))
    series = {}
    for r in records:
        series.setdefault((r.p, r.set_a), []).append(r)
    for (p, label), recs in sorted(series.items()):
        recs = sorted(recs, key=lambda r: r.epsilon)
        xs = [r.epsilon for r in recs]
        ax.plot(xs, [r.t_size for r in recs], "o-", ms=4, label=f"p={p} {label}")
        ax.plot(xs, [r.predicted_floor for r in recs], "--", lw=0.8)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("|T| (solid) vs predicted floor (dashed)")
    ax.legend(fontsize=6)
    return _finish(fig, path)


def render_counts_figure(records, path):
    """Spectral value against brute-force oracle; everything must sit on y=x."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for suite in sorted({r.suite for r in records}):
        pts = [(r.oracle, r.value) for r in records if r.suite == suite]
        ax.loglog(
            [max(1, o) for o, _ in pts], [max(1, v) for _, v in pts], ".", ms=3, label=suite
        )
    vals = [max(1, r.oracle) for r in records]
    if vals:
        lo, hi = min(vals), max(vals)
        ax.loglog([lo, hi], [lo, hi], "k--", lw=0.8)
    ax.set_xlabel("brute-force count")
    ax.set_ylabel("spectral count")
    ax.legend(fontsize=7)
    return _finish(fig, path)


def render_paley_figure(records, path):
    """Clique number against p (trend data only)."""
    fig, ax = plt.subplots(figsize=(5.5, 4))
    recs = sorted(records, key=lambda r: r.p)
    ax.plot([r.p for r in recs], [r.omega for r in recs], "o-", ms=4)
    ax.set_xscale("log")
    ax.set_xlabel("p")
    ax.set_ylabel("clique number")
    return _finish(fig, path)
