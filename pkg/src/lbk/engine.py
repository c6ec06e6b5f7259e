"""Closed-form evaluation of integral(p * g_hat) as a finite sum.

For a periodic p with period T and a kernel pair (g, g_hat) whose time side
is supported in [-A, A], the integral over the line collapses to

    sum over integers n with |n/T| <= A of
        c_n(p) * (g((n/T)-) + g((n/T)+)) / 2

with c_n the mean-normalized Fourier coefficient.  The sum is finite, the
nodes n/T are exact rationals, and nodes on the support boundary enter with
their midpoint value (zero for kernels continuous there).

The mean normalization (1/T inside c_n) is deliberate: it is what makes the
identity hold for every period.  The sanity anchor is p = 1 with T = 2 and
the box kernel, where the left side integrates the cardinal sine to exactly
1; an unnormalized coefficient would produce 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .kernels import BandlimitedKernel, ExcludedPointError, kernel_bspline
from .periodic import PeriodicFunction, fourier_coefficient
from .rationals import as_fraction

__all__ = [
    "Term",
    "EvaluationResult",
    "mixed_parseval",
    "lobachevsky",
    "single_term_check",
    "NORMALIZATION_NOTE",
]

NORMALIZATION_NOTE = (
    "Fourier coefficients are mean-normalized: c_n = (1/T) * integral over "
    "[-T/2, T/2] of p(x) exp(-2*pi*i*n*x/T) dx. This makes the finite-sum "
    "evaluation independent of the period parameterization."
)

MAX_COEFF_TOL = 1e-2


@dataclass(frozen=True)
class Term:
    """One node of the finite sum: contribution = coefficient * kernel_avg."""

    n: int
    node: Fraction
    coefficient: complex
    kernel_avg: float
    contribution: complex

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "node": str(self.node),
            "coeff": {"re": self.coefficient.real, "im": self.coefficient.imag},
            "kernel_avg": self.kernel_avg,
            "contribution": {
                "re": self.contribution.real,
                "im": self.contribution.imag,
            },
        }


@dataclass(frozen=True)
class EvaluationResult:
    """Value plus the per-node ledger, summed in ascending-n order."""

    value: complex
    terms: tuple[Term, ...]
    kernel_name: str
    period: Fraction
    normalization_note: str = NORMALIZATION_NOTE

    def resummed(self) -> complex:
        """Re-add the ledger in index order; reproduces `value` bit for bit."""
        total = 0j
        for t in self.terms:
            total += t.contribution
        return total

    def to_json_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "period": str(self.period),
            "kernel": self.kernel_name,
            "terms": [t.to_json_dict() for t in self.terms],
            "normalization_note": self.normalization_note,
        }


def _nodes_in_support(T: Fraction, A: Fraction) -> list[int]:
    """All integers n with |n/T| <= A, i.e. |n| <= A*T."""
    n_max = math.floor(A * T)
    return list(range(-n_max, n_max + 1))


def _check_excluded(ns, T: Fraction, K: BandlimitedKernel) -> None:
    excluded = set(K.excluded_points)
    if not excluded:
        return
    offenders = [n for n in ns if Fraction(n, 1) / T in excluded]
    if offenders:
        names = ", ".join(f"n = {n}" for n in offenders)
        raise ExcludedPointError(
            K.name,
            Fraction(offenders[0], 1) / T,
            f"hit by {names} with T = {T}; choose a period keeping all "
            "nodes n/T away from the excluded points",
        )


def _parseval_sum(
    p: PeriodicFunction,
    K: BandlimitedKernel,
    tol: float,
    *,
    include_boundary: bool = True,
) -> EvaluationResult:
    T = p.period
    A = as_fraction(K.support_radius)
    ns = _nodes_in_support(T, A)
    _check_excluded(ns, T, K)
    if not include_boundary:
        ns = [n for n in ns if abs(Fraction(n, 1) / T) != A]
    coeff_tol = min(MAX_COEFF_TOL, tol / max(1, len(ns)))

    terms = []
    for n in ns:
        node = Fraction(n, 1) / T
        kernel_avg = float(K.midpoint(node))
        coeff = fourier_coefficient(p, n, coeff_tol)
        contribution = coeff * kernel_avg
        terms.append(Term(n, node, coeff, kernel_avg, contribution))

    value = 0j
    for t in terms:
        value += t.contribution
    return EvaluationResult(
        value=value, terms=tuple(terms), kernel_name=K.name, period=T
    )


def mixed_parseval(
    p: PeriodicFunction, K: BandlimitedKernel, tol: float = 1e-9
) -> EvaluationResult:
    """Evaluate integral(p(x) * g_hat(x) dx) as the finite node sum.

    Preconditions: every node n/T with |n/T| <= A must avoid the kernel's
    excluded points (checked exactly; violations raise ExcludedPointError
    naming the offending n).  Boundary nodes |n/T| = A are included with
    their midpoint value.  Each coefficient is computed to tol/(#terms).
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return _parseval_sum(p, K, tol, include_boundary=True)


def lobachevsky(
    p: PeriodicFunction, k: int, tol: float = 1e-9
) -> EvaluationResult:
    """The cardinal-sine case: integral(sinc^k(x) p(x) dx).

    Same node sum with the order-k B-spline kernel.  For k >= 2 the spline
    is continuous and vanishes at the support boundary, so nodes with
    |n/T| = k/2 contribute exactly zero and are omitted from the ledger;
    for k = 1 boundary nodes stay, entering with the box midpoint 1/2.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"order must be a positive integer, got {k!r}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    K = kernel_bspline(k)
    return _parseval_sum(p, K, tol, include_boundary=(k == 1))


def single_term_check(p: PeriodicFunction, k: int) -> bool:
    """True when only the n = 0 node can survive: k*T <= 2 for k >= 2,
    or 0 < T < 2 for k = 1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"order must be a positive integer, got {k!r}")
    T = p.period
    if k == 1:
        return 0 < T < 2
    return k * T <= 2
