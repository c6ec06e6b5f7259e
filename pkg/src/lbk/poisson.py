"""Numerical verification of compact-support Poisson summation.

For a kernel time side g supported in [-A, A] and any rational shift xi,

    sum over all integers m of g_hat(m + xi)
        = sum over |n| <= A of midpoint-g(n) * exp(-2 pi i n xi),

where the right side is a finite sum over the integer points inside the
support.  The left side is generally only conditionally convergent, so it is
summed symmetrically and the last stretch of partial sums is averaged once
(Cesaro style) to damp the oscillation; the spread of that window is reported
as an honest tail diagnostic, not a rigorous bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .kernels import BandlimitedKernel, ExcludedPointError
from .rationals import as_fraction

__all__ = ["PoissonReport", "poisson_rhs", "poisson_lhs", "poisson_check"]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PoissonReport:
    """Outcome of one check: converged means |lhs_partial - rhs| <= tol."""

    xi: Fraction
    rhs: complex
    lhs_partial: complex
    M: int
    tail_estimate: float
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "xi": str(self.xi),
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "lhs_partial": {"re": self.lhs_partial.real, "im": self.lhs_partial.imag},
            "M": self.M,
            "tail_estimate": self.tail_estimate,
            "converged": self.converged,
        }


def _unit_phase(n: int, xi: Fraction) -> complex:
    """exp(-2 pi i n xi) with the phase reduced modulo 1 exactly first.

    The exact reduction makes the right side a trigonometric polynomial in
    xi in the strictest sense: xi and xi + 1 produce identical floats.
    """
    frac = (n * xi) % 1
    return cmath.exp(-1j * TWO_PI * float(frac))


def poisson_rhs(K: BandlimitedKernel, xi) -> complex:
    """Exact finite sum of midpoint time-side values against the shift phase."""
    xi = as_fraction(xi)
    A = as_fraction(K.support_radius)
    n_max = math.floor(A)
    excluded = set(K.excluded_points)
    total = 0j
    for n in range(-n_max, n_max + 1):
        node = Fraction(n)
        if node in excluded:
            raise ExcludedPointError(
                K.name, node, f"integer point n = {n} inside the support"
            )
        total += float(K.midpoint(node)) * _unit_phase(n, xi)
    return total


def poisson_lhs(K: BandlimitedKernel, xi, M: int):
    """Symmetric partial sum of g_hat(m + xi) for |m| <= M, Cesaro-averaged.

    Returns (averaged partial sum, tail estimate).  The average runs over the
    last ceil(M/10) symmetric partial sums; the tail estimate is the largest
    deviation of a window member from the window mean.
    """
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    xi_f = float(as_fraction(xi))
    transform = K.transform
    running = complex(transform(xi_f))
    window_len = (M + 9) // 10  # always <= M, so the window starts past m = 0
    window_start = M - window_len + 1
    window: list[complex] = []
    for m in range(1, M + 1):
        running += transform(m + xi_f) + transform(-m + xi_f)
        if m >= window_start:
            window.append(running)
    mean = sum(window) / len(window)
    spread = max(abs(w - mean) for w in window)
    return mean, spread


def poisson_check(
    K: BandlimitedKernel, xi, tol: float = 1e-8, M_max: int = 10**6
) -> PoissonReport:
    """Double M until the averaged left side meets the exact right side.

    Non-convergence within M_max is reported as converged = False, never as
    an exception; the report still carries the best partial sum and its
    tail spread.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    xi = as_fraction(xi)
    rhs = poisson_rhs(K, xi)
    M = 16
    partial, spread = poisson_lhs(K, xi, min(M, M_max))
    while abs(partial - rhs) > tol and M < M_max:
        M = min(2 * M, M_max)
        partial, spread = poisson_lhs(K, xi, M)
    converged = abs(partial - rhs) <= tol
    return PoissonReport(
        xi=xi,
        rhs=rhs,
        lhs_partial=partial,
        M=min(M, M_max),
        tail_estimate=spread,
        converged=converged,
    )
