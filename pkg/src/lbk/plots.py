"""Figure rendering for the CLI report paths.

Every subcommand can write one PNG/PDF next to its machine-readable output.
Rendering is strictly file-based (Agg backend, no display); figures show the
quantities the reports already contain, so a figure never adds information,
it just makes the convergence or the term structure visible at a glance.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .engine import EvaluationResult
from .oracle import ComparisonReport, QuadratureReport
from .poisson import PoissonReport
from .pwpoly import PiecewisePolynomial, float_evaluator


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_evaluation(result: EvaluationResult, path: str) -> None:
    """Stem plot of the per-node contributions."""
    fig, ax = plt.subplots(figsize=(7, 4))
    if result.terms:
        nodes = [float(t.node) for t in result.terms]
        contribs = [t.contribution.real for t in result.terms]
        ax.stem(nodes, contribs, basefmt="k-")
    ax.axhline(result.value.real, color="C3", ls="--", lw=1,
               label=f"value = {result.value.real:.10g}")
    ax.set_xlabel("node n/T")
    ax.set_ylabel("Re contribution")
    ax.set_title(f"kernel {result.kernel_name}, period {result.period}")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, path)


def plot_quadrature(report: QuadratureReport, path: str,
                    reference: complex | None = None) -> None:
    """Symmetric cumulative sums against the reported value."""
    sums = report.cumulative_sums()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(sums)), [s.real for s in sums], lw=0.8,
            label="cumulative block sums")
    ax.axhline(report.value.real, color="C3", ls="--", lw=1,
               label=f"{report.method} value = {report.value.real:.10g}")
    if reference is not None:
        ax.axhline(reference.real, color="C2", ls=":", lw=1,
                   label=f"engine = {reference.real:.10g}")
    ax.set_xlabel("symmetric radius j")
    ax.set_ylabel("Re cumulative integral")
    ax.set_title(f"X = {report.truncation_radius:g}, "
                 f"error estimate {report.error_estimate:.2e}")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, path)


def plot_comparison(report: ComparisonReport, path: str) -> None:
    plot_quadrature(report.oracle, path, reference=report.engine.value)


def plot_poisson(report: PoissonReport, partial_sums, path: str) -> None:
    """Partial sums of the transform-side series against the exact finite sum."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(partial_sums)), [s.real for s in partial_sums], lw=0.8,
            label="symmetric partial sums")
    ax.axhline(report.rhs.real, color="C3", ls="--", lw=1,
               label=f"finite side = {report.rhs.real:.10g}")
    ax.set_xlabel("summation radius m")
    ax.set_ylabel("Re partial sum")
    status = "converged" if report.converged else "not converged"
    ax.set_title(f"xi = {report.xi}, M = {report.M} ({status})")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, path)


def plot_bspline(B: PiecewisePolynomial, path: str, label: str = "") -> None:
    """The spline curve with its breakpoints marked."""
    lo, hi = float(B.breakpoints[0]), float(B.breakpoints[-1])
    pad = 0.25 * (hi - lo) if hi > lo else 1.0
    xs = np.linspace(lo - pad, hi + pad, 801)
    evaluate = float_evaluator(B)
    ys = [evaluate(x) for x in xs]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(xs, ys, lw=1.5)
    for b in B.breakpoints:
        ax.axvline(float(b), color="0.8", lw=0.6, zorder=0)
    ax.set_xlabel("x")
    ax.set_ylabel(label or "value")
    if label:
        ax.set_title(label)
    _finish(fig, path)


def plot_identity_table(rows, path: str) -> None:
    """Log-scale bars of |engine - oracle| per identity with tolerance ticks."""
    fig, ax = plt.subplots(figsize=(7, 4))
    names = [r["identity"] for r in rows]
    diffs = [max(r["abs_diff"], 1e-17) for r in rows]
    tols = [r["tolerance"] for r in rows]
    pos = range(len(rows))
    colors = ["C0" if r["passed"] else "C3" for r in rows]
    ax.bar(pos, diffs, color=colors)
    ax.scatter(pos, tols, marker="_", s=400, color="k", label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(list(pos))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("|closed form - quadrature|")
    ax.legend(loc="best", fontsize=8)
    _finish(fig, path)
