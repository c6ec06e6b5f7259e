"""Band-limited-kernel integrals of periodic functions.

The integral of a periodic function against an oscillatory weight whose
inverse transform has compact support collapses to a finite sum of Fourier
coefficients times pointwise (midpoint) values of that compactly supported
profile.  This package evaluates such integrals in closed form, validates
every result with an independent brute-force quadrature oracle, and checks
the compact-support Poisson summation identity the construction rests on.
"""

from .engine import (
    EvaluationResult,
    Term,
    lobachevsky,
    mixed_parseval,
    single_term_check,
)
from .kernels import (
    BandlimitedKernel,
    ExcludedPointError,
    bessel_j,
    dilate,
    kernel_arcsine,
    kernel_bspline,
    kernel_from_selector,
    kernel_semicircle,
    sinc,
)
from .oracle import ComparisonReport, QuadratureReport, oracle_compare, oracle_integral
from .periodic import (
    ParseError,
    PeriodicFunction,
    abs_sine,
    constant,
    cosine,
    fourier_coefficient,
    from_samples,
    linear_combination,
    parse_periodic,
    sawtooth,
    sine,
    square_wave,
    triangle_wave,
    trig_polynomial,
)
from .poisson import PoissonReport, poisson_check, poisson_lhs, poisson_rhs
from .pwpoly import (
    PiecewisePolynomial,
    Limits,
    Rational,
    box,
    bspline,
    convolve_box,
    derivative,
    eval_limits,
    format_pieces,
    total_integral,
)
from .quadrature import QuadratureError

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BandlimitedKernel",
    "ComparisonReport",
    "EvaluationResult",
    "ExcludedPointError",
    "Limits",
    "ParseError",
    "PeriodicFunction",
    "PiecewisePolynomial",
    "PoissonReport",
    "QuadratureError",
    "QuadratureReport",
    "Rational",
    "Term",
    "abs_sine",
    "bessel_j",
    "box",
    "bspline",
    "constant",
    "convolve_box",
    "cosine",
    "derivative",
    "dilate",
    "eval_limits",
    "format_pieces",
    "fourier_coefficient",
    "from_samples",
    "kernel_arcsine",
    "kernel_bspline",
    "kernel_from_selector",
    "kernel_semicircle",
    "linear_combination",
    "lobachevsky",
    "mixed_parseval",
    "oracle_compare",
    "oracle_integral",
    "parse_periodic",
    "poisson_check",
    "poisson_lhs",
    "poisson_rhs",
    "sawtooth",
    "sinc",
    "sine",
    "single_term_check",
    "square_wave",
    "total_integral",
    "triangle_wave",
    "trig_polynomial",
]
