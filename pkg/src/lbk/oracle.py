"""Brute-force validation of the closed-form evaluation.

The integral of g_hat(x) p(x) over the line is approximated directly: the
interval [-X, X] is covered by unit blocks centered at the integers (the
natural period of the oscillation), each block is integrated by a fixed
Gauss-Kronrod panel split at the integrand's declared jumps, and blocks are
accumulated in the deterministic interleaved order 0, 1, -1, 2, -2, ...

Truncation is the dominant error source, so the symmetric cumulative sums
C_0, C_1, ..., C_M carry the real information:

  * plain          - value is C_M, the sharp truncation.
  * block_averaged - the outermost tenth of the cumulative sums is combined:
    when the kernel declares a monotone cumulative-tail exponent beta, a
    least-squares fit of C_j = V - c * j**(-beta) over that window yields V
    (removing the slowly decaying tail bias); without a usable model the
    window is simply averaged, which damps conditionally convergent
    oscillation.

Everything is deterministic: fixed nodes, fixed block order, fixed window.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .engine import EvaluationResult, mixed_parseval
from .kernels import BandlimitedKernel
from .periodic import PeriodicFunction
from .quadrature import QuadratureError, integrate_block

__all__ = [
    "QuadratureReport",
    "ComparisonReport",
    "oracle_integral",
    "oracle_compare",
    "MAX_BLOCKS_ENV",
]

MAX_BLOCKS_ENV = "LBK_MAX_BLOCKS"
_DEFAULT_MAX_BLOCKS = 50001

METHOD_PLAIN = "plain"
METHOD_BLOCK_AVERAGED = "block_averaged"


def _max_blocks() -> int:
    raw = os.environ.get(MAX_BLOCKS_ENV)
    if raw is None:
        return _DEFAULT_MAX_BLOCKS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_BLOCKS_ENV} must be an integer, got {raw!r}") from None
    if cap < 21:
        raise ValueError(f"{MAX_BLOCKS_ENV} must allow at least 21 blocks, got {cap}")
    return cap


@dataclass(frozen=True)
class QuadratureReport:
    """Oracle outcome: value plus its per-block provenance.

    block_values is stored in accumulation order (0, 1, -1, 2, -2, ...);
    value is recomputable from it, see value_from_blocks().
    """

    value: complex
    truncation_radius: float
    block_values: tuple[complex, ...]
    error_estimate: float
    method: str
    quadrature_error: float
    tail_spread: float
    # which tail model produced `value`, so value_from_blocks can replay it
    _fit_beta: Optional[float] = None

    @property
    def blocks(self) -> int:
        return len(self.block_values)

    def cumulative_sums(self) -> list[complex]:
        """Symmetric cumulative sums C_j = sum of blocks with |m| <= j."""
        sums = [self.block_values[0]]
        acc = self.block_values[0]
        for i in range(1, len(self.block_values), 2):
            acc += self.block_values[i]
            acc += self.block_values[i + 1]
            sums.append(acc)
        return sums

    def value_from_blocks(self) -> complex:
        """Re-derive value from the stored blocks (the report invariant)."""
        sums = self.cumulative_sums()
        if self.method == METHOD_PLAIN:
            return sums[-1]
        M = len(sums) - 1
        window = sums[-_window_length(M):]
        beta = self._fit_beta
        if beta is None or len(window) < 3:
            return sum(window) / len(window)
        start = M - len(window) + 1
        return _tail_fit(window, start, beta)[0]

    def to_json_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "truncation_radius": self.truncation_radius,
            "method": self.method,
            "error_estimate": self.error_estimate,
            "quadrature_error": self.quadrature_error,
            "tail_spread": self.tail_spread,
            "blocks": self.blocks,
            "block_values": [
                {"re": b.real, "im": b.imag} for b in self.block_values
            ],
        }


def _window_length(M: int) -> int:
    return max(2, (M + 9) // 10)


def _tail_fit(window: list[complex], start: int, beta: float):
    """Least squares for C_j = V + c * j**(-beta) over j = start, start+1, ...

    Returns (V, residual spread).  The regressor j**(-beta) tends to zero, so
    the intercept V is the extrapolated limit.
    """
    n = len(window)
    xs = [float(start + i) ** (-beta) for i in range(n)]
    sx = math.fsum(xs)
    sxx = math.fsum(x * x for x in xs)
    sy = sum(window, 0j)
    sxy = sum(x * y for x, y in zip(xs, window))
    det = n * sxx - sx * sx
    if det == 0.0:
        mean = sy / n
        return mean, max(abs(w - mean) for w in window)
    c = (n * sxy - sx * sy) / det
    V = (sy - c * sx) / n
    spread = max(abs(w - (V + c * x)) for x, w in zip(xs, window))
    return V, spread


def oracle_integral(
    p: PeriodicFunction,
    K: BandlimitedKernel,
    X: float,
    tol: float = 1e-8,
    method: str = METHOD_BLOCK_AVERAGED,
) -> QuadratureReport:
    """Integrate g_hat(x) * p(x) over [-X, X] by per-unit-block quadrature.

    X >= 10 and tol in (0, 1e-2].  Blocks are the integer cells
    [m - 1/2, m + 1/2], split at p's jump locations so each panel is smooth;
    an X too small for the tail is not an error, it just shows up in the
    error estimate.
    """
    if X < 10:
        raise ValueError(f"truncation radius must be at least 10, got {X}")
    if not 0.0 < tol <= 1e-2:
        raise ValueError(f"tolerance must lie in (0, 1e-2], got {tol}")
    if method not in (METHOD_PLAIN, METHOD_BLOCK_AVERAGED):
        raise ValueError(f"unknown method {method!r}")
    M = int(round(X))
    cap = _max_blocks()
    if 2 * M + 1 > cap:
        raise ValueError(
            f"X = {X} needs {2 * M + 1} blocks, above the {MAX_BLOCKS_ENV} "
            f"cap of {cap}"
        )

    transform = K.transform
    threshold = tol / (8.0 * (2 * M + 1))
    half_period = p.period / 2
    if half_period < Fraction(1, 128):
        raise ValueError(
            f"period {p.period} is too short for unit-block quadrature "
            "(more than 128 panels per block would be needed)"
        )

    def block(m: int) -> tuple[complex, float]:
        a = Fraction(2 * m - 1, 2)
        b = Fraction(2 * m + 1, 2)
        splits = set(p.jumps_in(a, b))
        if half_period < 1:
            # keep each panel inside half a period of p so the fixed rule
            # sees bounded oscillation
            lo = math.ceil((a + half_period) / half_period)
            hi = math.floor((b + half_period) / half_period)
            splits.update(-half_period + i * half_period for i in range(lo, hi + 1))
        value, err = integrate_block(
            lambda x: transform(x) * p(x),
            float(a),
            float(b),
            split_points=[float(s) for s in splits],
            bisect_threshold=threshold,
        )
        if err > 1e-2 * max(1.0, abs(value)):
            raise QuadratureError(f"block [{a}, {b}] did not resolve", err)
        return value, err

    block_values: list[complex] = []
    quad_err = 0.0
    v, e = block(0)
    block_values.append(v)
    quad_err += e
    for m in range(1, M + 1):
        for mm in (m, -m):
            v, e = block(mm)
            block_values.append(v)
            quad_err += e

    # symmetric cumulative sums and the tail window
    sums = [block_values[0]]
    acc = block_values[0]
    for i in range(1, len(block_values), 2):
        acc += block_values[i]
        acc += block_values[i + 1]
        sums.append(acc)
    L = _window_length(M)
    window = sums[-L:]
    mean = sum(window) / len(window)

    beta = K.tail_fit_exponent
    if method == METHOD_PLAIN:
        value = sums[-1]
        spread = max(abs(w - value) for w in window)
        fit_beta = None
    elif beta is None or len(window) < 3:
        value = mean
        spread = max(abs(w - mean) for w in window)
        fit_beta = None
    else:
        value, spread = _tail_fit(window, M - len(window) + 1, beta)
        fit_beta = beta

    return QuadratureReport(
        value=value,
        truncation_radius=float(X),
        block_values=tuple(block_values),
        error_estimate=quad_err + spread,
        method=method,
        quadrature_error=quad_err,
        tail_spread=spread,
        _fit_beta=fit_beta,
    )


def analytic_tail_radius(K: BandlimitedKernel, p_sup: float, tol: float) -> float:
    """Smallest X with the crude envelope tail bound below tol/2.

    For a transform envelope ~ (pi x)**(-d) with d = tail_decay > 1 the bound
    is 2 * sup|p| / (pi**d (d-1) X**(d-1)).
    """
    d = K.tail_decay
    if d <= 1.0:
        return math.inf
    target = max(tol, 1e-300) / 2.0
    X = (2.0 * p_sup / (math.pi ** d * (d - 1.0) * target)) ** (1.0 / (d - 1.0))
    return max(10.0, X)


@dataclass(frozen=True)
class ComparisonReport:
    engine: EvaluationResult
    oracle: QuadratureReport
    difference: float
    tolerance: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "engine": self.engine.to_json_dict(),
            "oracle": self.oracle.to_json_dict(),
            "difference": self.difference,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def oracle_compare(
    p: PeriodicFunction, K: BandlimitedKernel, tol: float = 1e-6
) -> ComparisonReport:
    """Run the closed-form evaluation and the brute-force oracle side by side.

    The oracle's radius and method follow the kernel's declared tail class:
    slowly decaying or oscillatory tails (decay <= 2, i.e. the k = 1 and
    k = 2 cardinal-sine families and both Bessel kernels) use the averaged /
    tail-fitted estimator at X >= 500; faster tails use sharp truncation
    with X sized from the analytic envelope bound, falling back to the
    fitted estimator when that bound would demand more blocks than the
    configured cap allows.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    engine_result = mixed_parseval(p, K, min(tol, 1e-9))

    p_sup = p.magnitude_estimate()
    cap = _max_blocks()
    cap_X = (cap - 1) // 2
    if K.tail_decay <= 2.0:
        method = METHOD_BLOCK_AVERAGED
        # the 1/X cumulative tail of the decay-2 family needs the largest
        # window for its fit; the purely oscillatory classes settle by 500
        X = float(min(1000 if K.tail_decay == 2.0 else 500, cap_X))
    else:
        X = analytic_tail_radius(K, p_sup, tol)
        if X <= cap_X:
            method = METHOD_PLAIN
        else:
            method = METHOD_BLOCK_AVERAGED
            X = float(min(800, cap_X))
    oracle_tol = min(1e-2, max(tol / 10.0, 1e-12))
    report = oracle_integral(p, K, math.ceil(X), oracle_tol, method)
    difference = abs(engine_result.value - report.value)
    return ComparisonReport(
        engine=engine_result,
        oracle=report,
        difference=difference,
        tolerance=tol,
        passed=difference <= tol,
    )
