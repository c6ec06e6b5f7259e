"""Band-limited kernels: compactly supported time side paired with its transform.

A kernel is the pair (g, g_hat).  The time side g answers one-sided limits
(exactly, for the B-spline family) and declares the finitely many points
where it fails to be of locally bounded variation; the transform side is the
oscillatory weight that appears under the integral sign.  Catalog:

    sinc:k=K   B-spline of order K  <->  sinc(xi)^K
    jinc       semicircle sqrt(1-x^2) <->  J1(2 pi xi)/(2 xi)
    j0         arcsine 1/sqrt(1-x^2)  <->  pi * J0(2 pi xi)

Bessel functions are evaluated in-repo (Cephes-style rational approximations
below 5, Hankel asymptotics above) so the accuracy contract does not depend
on the host environment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .pwpoly import Limits, bspline, eval_limits
from .rationals import as_fraction, parse_rational

__all__ = [
    "ExcludedPointError",
    "BandlimitedKernel",
    "kernel_bspline",
    "kernel_semicircle",
    "kernel_arcsine",
    "dilate",
    "kernel_from_selector",
    "sinc",
    "bessel_j",
]


class ExcludedPointError(ValueError):
    """A query hit a point where the kernel's time side is not of bounded variation."""

    def __init__(self, kernel_name: str, point: Fraction, detail: str = ""):
        msg = f"kernel {kernel_name!r} is not of bounded variation at {point}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.kernel_name = kernel_name
        self.point = point


# --------------------------------------------------------------------------
# cardinal sine
# --------------------------------------------------------------------------

def sinc(x: float) -> float:
    """Normalized cardinal sine sin(pi x)/(pi x), equal to 1 at 0.

    Exact zeros at nonzero integers, and a Taylor fallback for |x| < 1e-4
    to dodge the 0/0 cancellation.
    """
    x = float(x)
    if x == 0.0:
        return 1.0
    if x.is_integer():
        return 0.0
    ax = abs(x)
    if ax < 1e-4:
        z = (math.pi * x) ** 2
        return 1.0 - z / 6.0 * (1.0 - z / 20.0)
    return math.sin(math.pi * x) / (math.pi * x)


# --------------------------------------------------------------------------
# Bessel J0 / J1
#
# Rational-approximation coefficients from the Cephes Math Library
# (Stephen L. Moshier), the standard double-precision fits: two rational
# functions below |x| = 5 pinned at the first zeros, Hankel asymptotic
# phase/amplitude fits above.  Peak error is a few 1e-16 relative to the
# envelope.
# --------------------------------------------------------------------------

_SQ2OPI = 7.9788456080286535587989e-1  # sqrt(2/pi)
_PIO4 = 7.85398163397448309616e-1
_THPIO4 = 2.35619449019234492885e0

_J0_RP = (-4.79443220978201773821e9, 1.95617491946556577543e12,
          -2.49248344360967716204e14, 9.70862251047306323952e15)
_J0_RQ = (4.99563147152651017219e2, 1.73785401676374683123e5,
          4.84409658339962045305e7, 1.11855537045356834862e10,
          2.11277520115489217587e12, 3.10518229857422583814e14,
          3.18121955943204943306e16, 1.71086294081043136091e18)
_J0_PP = (7.96936729297347051624e-4, 8.28352392107440799803e-2,
          1.23953371646414299388e0, 5.44725003058768775090e0,
          8.74716500199817011941e0, 5.30324038235394892183e0,
          9.99999999999999997821e-1)
_J0_PQ = (9.24408810558863637013e-4, 8.56288474354474431428e-2,
          1.25352743901058953537e0, 5.47097740330417105182e0,
          8.76190883237069594232e0, 5.30605288235394617618e0,
          1.00000000000000000218e0)
_J0_QP = (-1.13663838898469149931e-2, -1.28252718670509318512e0,
          -1.95539544257735972385e1, -9.32060152123768231369e1,
          -1.77681167980488050595e2, -1.47077505154951170175e2,
          -5.14105326766599330220e1, -6.05014350600728481186e0)
_J0_QQ = (6.43178256118178023184e1, 8.56430025976980587198e2,
          3.88240183605401609683e3, 7.24046774195652478189e3,
          5.93072701187316984827e3, 2.06209331660327847417e3,
          2.42005740240291393179e2)
_DR1 = 5.78318596294678452118e0
_DR2 = 3.04712623436620863991e1

_J1_RP = (-8.99971225705559398224e8, 4.52228297998194034323e11,
          -7.27494245221818276015e13, 3.68295732863852883286e15)
_J1_RQ = (6.20836478118054335476e2, 2.56987256757748830383e5,
          8.35146791431949253037e7, 2.21511595479792499675e10,
          4.74914122079991414898e12, 7.84369607876235854894e14,
          8.95222336184627338078e16, 5.32278620332680085395e18)
_J1_PP = (7.62125616208173112003e-4, 7.31397056940917570436e-2,
          1.12719608129684925642e0, 5.11207951146807644818e0,
          8.42404590141772420927e0, 5.21451598682361504063e0,
          1.00000000000000000254e0)
_J1_PQ = (5.71323128072548699714e-4, 6.88455908754495404082e-2,
          1.10514232634061696926e0, 5.07386386128601488557e0,
          8.39985554327604159757e0, 5.20982848682361821619e0,
          9.99999999999999997461e-1)
_J1_QP = (5.10862594750176621635e-2, 4.98213872951233449420e0,
          7.58238284132545283818e1, 3.66779609360150777800e2,
          7.10856304998926107277e2, 5.97489612400613639965e2,
          2.11688757100572135698e2, 2.52070205858023719784e1)
_J1_QQ = (7.42373277035675149943e1, 1.05644886038262816351e3,
          4.98641058337653607651e3, 9.56231892404756170795e3,
          7.99704160447350683650e3, 2.82619278517639096600e3,
          3.36093607810698293419e2)
_Z1 = 1.46819706421238932572e1
_Z2 = 4.92184563216946036703e1

MAX_BESSEL_ARG = 1e6


def _polevl(x: float, coef) -> float:
    ans = coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _p1evl(x: float, coef) -> float:
    # implicit leading coefficient 1
    ans = x + coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _j0(x: float) -> float:
    x = abs(x)
    if x <= 5.0:
        z = x * x
        if x < 1e-5:
            return 1.0 - z / 4.0
        p = (z - _DR1) * (z - _DR2)
        return p * _polevl(z, _J0_RP) / _p1evl(z, _J0_RQ)
    w = 5.0 / x
    z = 25.0 / (x * x)
    p = _polevl(z, _J0_PP) / _polevl(z, _J0_PQ)
    q = _polevl(z, _J0_QP) / _p1evl(z, _J0_QQ)
    xn = x - _PIO4
    p = p * math.cos(xn) - w * q * math.sin(xn)
    return p * _SQ2OPI / math.sqrt(x)


def _j1(x: float) -> float:
    sign = -1.0 if x < 0.0 else 1.0
    x = abs(x)
    if x <= 5.0:
        z = x * x
        w = _polevl(z, _J1_RP) / _p1evl(z, _J1_RQ)
        return sign * w * x * (z - _Z1) * (z - _Z2)
    w = 5.0 / x
    z = w * w
    p = _polevl(z, _J1_PP) / _polevl(z, _J1_PQ)
    q = _polevl(z, _J1_QP) / _p1evl(z, _J1_QQ)
    xn = x - _THPIO4
    p = p * math.cos(xn) - w * q * math.sin(xn)
    return sign * p * _SQ2OPI / math.sqrt(x)


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind, order 0 or 1.

    Accurate to about 1e-12 relative (1e-14 absolute near zeros) on the
    supported range |x| <= 1e6; J0 is exactly even and J1 exactly odd.
    """
    if order not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are supported, got {order}")
    x = float(x)
    if abs(x) > MAX_BESSEL_ARG:
        raise ValueError(f"|x| = {abs(x):g} exceeds the supported range {MAX_BESSEL_ARG:g}")
    return _j0(x) if order == 0 else _j1(x)


def _jinc(xi: float) -> float:
    """J1(2 pi xi) / (2 xi), extended by pi/2 at 0."""
    if abs(xi) < 1e-6:
        # J1(z)/z = 1/2 - z^2/16 + z^4/384 for z = 2 pi xi
        z2 = (2.0 * math.pi * xi) ** 2
        return math.pi * (0.5 - z2 / 16.0 * (1.0 - z2 / 24.0))
    return _j1(2.0 * math.pi * xi) / (2.0 * xi)


# --------------------------------------------------------------------------
# kernel objects
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BandlimitedKernel:
    """The pair (g, g_hat) with declared support radius and excluded points.

    time_side(x) returns the (left, right, avg) limits of g; it accepts exact
    rationals (floats convert exactly) and raises ExcludedPointError exactly
    at declared excluded points.  transform(xi) evaluates g_hat.

    tail_decay is the envelope decay exponent of |g_hat|; tail_fit_exponent
    is the exponent of the cumulative-tail model the quadrature oracle may
    fit (None means the tail carries no usable monotone model and plain
    averaging is used).
    """

    name: str
    support_radius: Fraction
    time_side: Callable[[object], Limits]
    transform: Callable[[float], float]
    excluded_points: tuple[Fraction, ...] = ()
    tail_decay: float = 1.0
    tail_fit_exponent: Optional[float] = None

    def midpoint(self, x) -> Fraction:
        """(g(x-) + g(x+)) / 2."""
        return self.time_side(x).avg


def kernel_bspline(k: int) -> BandlimitedKernel:
    """B-spline kernel of order k: transform sinc^k, support radius k/2."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"B-spline kernel order must be a positive integer, got {k!r}")
    B = bspline(k)

    def time_side(x) -> Limits:
        return eval_limits(B, as_fraction(x))

    def transform(xi: float) -> float:
        return sinc(xi) ** k

    return BandlimitedKernel(
        name=f"sinc:k={k}",
        support_radius=Fraction(k, 2),
        time_side=time_side,
        transform=transform,
        excluded_points=(),
        tail_decay=float(k),
        tail_fit_exponent=float(k - 1) if k >= 2 else None,
    )


def kernel_semicircle() -> BandlimitedKernel:
    """Semicircle profile sqrt(1-x^2) on [-1,1]; transform is the jinc."""

    def time_side(x) -> Limits:
        x = as_fraction(x)
        if abs(x) >= 1:
            z = Fraction(0)
            return Limits(z, z, z)
        v = math.sqrt(float(1 - x * x))
        return Limits(v, v, v)

    return BandlimitedKernel(
        name="jinc",
        support_radius=Fraction(1),
        time_side=time_side,
        transform=_jinc,
        excluded_points=(),
        tail_decay=1.5,
        tail_fit_exponent=1.5,
    )


def kernel_arcsine() -> BandlimitedKernel:
    """Arcsine profile 1/sqrt(1-x^2) on (-1,1); transform pi*J0(2 pi xi).

    The profile blows up at +-1, so those two points are excluded: querying
    the time side exactly there raises, and consumers must keep their sample
    grids away from them.
    """
    one = Fraction(1)

    def time_side(x) -> Limits:
        x = as_fraction(x)
        if abs(x) == one:
            raise ExcludedPointError("j0", x, "profile diverges at the support edge")
        if abs(x) > one:
            z = Fraction(0)
            return Limits(z, z, z)
        v = 1.0 / math.sqrt(float(1 - x * x))
        return Limits(v, v, v)

    def transform(xi: float) -> float:
        return math.pi * _j0(2.0 * math.pi * xi)

    return BandlimitedKernel(
        name="j0",
        support_radius=one,
        time_side=time_side,
        transform=transform,
        excluded_points=(-one, one),
        tail_decay=0.5,
        tail_fit_exponent=0.5,
    )


def dilate(K: BandlimitedKernel, lam) -> BandlimitedKernel:
    """Dilated kernel h(x) = g(x/lam): support and excluded points scale by
    lam, and the transform becomes lam * g_hat(lam * xi).

    lam is kept as an exact rational; floats convert exactly, so an
    irrational factor enters as the caller's double, bit for bit.
    """
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError(f"dilation factor must be positive, got {lam}")
    if lam == 1:
        return K
    lam_f = float(lam)
    base_time = K.time_side
    base_transform = K.transform

    def time_side(x) -> Limits:
        return base_time(as_fraction(x) / lam)

    def transform(xi: float) -> float:
        return lam_f * base_transform(lam_f * xi)

    return BandlimitedKernel(
        name=f"{K.name}:dilate={lam}",
        support_radius=K.support_radius * lam,
        time_side=time_side,
        transform=transform,
        excluded_points=tuple(e * lam for e in K.excluded_points),
        tail_decay=K.tail_decay,
        tail_fit_exponent=K.tail_fit_exponent,
    )


def kernel_from_selector(selector: str) -> BandlimitedKernel:
    """Build a kernel from CLI syntax: `sinc:k=<int>`, `jinc`, `j0`,
    with an optional `:dilate=<rational>` suffix."""
    parts = [p.strip() for p in selector.strip().split(":") if p.strip()]
    if not parts:
        raise ValueError("empty kernel selector")
    head, opts = parts[0], parts[1:]
    options: dict[str, str] = {}
    for opt in opts:
        key, eq, value = opt.partition("=")
        if not eq:
            raise ValueError(f"malformed kernel option {opt!r} (expected key=value)")
        options[key.strip()] = value.strip()

    if head == "sinc":
        if "k" not in options:
            raise ValueError("sinc kernel needs an order: sinc:k=<int>")
        raw_k = options.pop("k")
        try:
            k = int(raw_k)
        except ValueError:
            raise ValueError(f"sinc order must be an integer, got {raw_k!r}") from None
        kern = kernel_bspline(k)
    elif head == "jinc":
        kern = kernel_semicircle()
    elif head == "j0":
        kern = kernel_arcsine()
    else:
        raise ValueError(f"unknown kernel {head!r} (expected sinc:k=<int>, jinc, or j0)")

    if "dilate" in options:
        kern = dilate(kern, parse_rational(options.pop("dilate")))
    if options:
        raise ValueError(f"unknown kernel option(s): {', '.join(sorted(options))}")
    return kern
