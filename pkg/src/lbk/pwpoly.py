"""Exact piecewise-polynomial arithmetic for the centered B-spline family.

Everything in this module is computed in arbitrary-precision rational
arithmetic: breakpoint membership ("does this node sit on a knot?") must be
decided exactly, and the spline values themselves (3/4, 1/8, ...) are exact
rationals.  Pieces store monomial coefficients centered at the left
breakpoint of their interval, which keeps later float conversion free of
cancellation.

Values at breakpoints are never stored; `eval_limits` produces one-sided
limits on demand, and the midpoint (left+right)/2 is the value every
downstream consumer uses.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

Rational = Fraction

_HALF = Fraction(1, 2)


class Limits(NamedTuple):
    left: Fraction
    right: Fraction
    avg: Fraction


def _trim(coeffs) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_eval(coeffs, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_shift(coeffs, delta: Fraction) -> list[Fraction]:
    """Re-center sum c_k u^k as a polynomial in s where u = s + delta."""
    out = [Fraction(0)] * len(coeffs)
    for k, ck in enumerate(coeffs):
        if ck == 0:
            continue
        binom = Fraction(1)
        power = ck
        # expand ck * (s + delta)^k from the s^k term downward
        for j in range(k, -1, -1):
            out[j] += power * binom
            if j > 0:
                binom = binom * j / (k - j + 1)
                power = power * delta
    return out


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Compactly supported piecewise polynomial on a rational breakpoint grid.

    pieces[i] holds coefficients of the polynomial valid on the open interval
    (breakpoints[i], breakpoints[i+1]), in powers of (x - breakpoints[i]).
    The function is identically zero outside [breakpoints[0], breakpoints[-1]].
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        pcs = tuple(_trim(p) for p in self.pieces)
        if len(pcs) != max(len(bps) - 1, 0):
            raise ValueError("need exactly one piece per breakpoint interval")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)

    @property
    def support(self) -> tuple[Fraction, Fraction] | None:
        if len(self.breakpoints) < 2:
            return None
        return self.breakpoints[0], self.breakpoints[-1]

    def degree(self) -> int:
        return max((len(p) - 1 for p in self.pieces if p), default=-1)


def box() -> PiecewisePolynomial:
    """The unit box: 1 on (-1/2, 1/2), 0 outside, midpoint 1/2 at the edges."""
    return PiecewisePolynomial((-_HALF, _HALF), ((Fraction(1),),))


def eval_limits(B: PiecewisePolynomial, x) -> Limits:
    """One-sided limits and their average at x, all exact."""
    x = Fraction(x)
    bps = B.breakpoints
    if not bps or x < bps[0] or x > bps[-1]:
        z = Fraction(0)
        return Limits(z, z, z)
    i = bisect_left(bps, x)
    if i < len(bps) and bps[i] == x:
        left = _poly_eval(B.pieces[i - 1], x - bps[i - 1]) if i > 0 else Fraction(0)
        if i < len(B.pieces) and B.pieces[i]:
            right = B.pieces[i][0]  # value at the piece's own left endpoint
        else:
            right = Fraction(0)
        return Limits(left, right, (left + right) / 2)
    # strictly inside piece i-1
    v = _poly_eval(B.pieces[i - 1], x - bps[i - 1])
    return Limits(v, v, v)


def total_integral(B: PiecewisePolynomial) -> Fraction:
    """Exact integral of B over the whole line."""
    total = Fraction(0)
    for (a, b), coeffs in zip(zip(B.breakpoints, B.breakpoints[1:]), B.pieces):
        w = b - a
        total += sum(c * w ** (k + 1) / (k + 1) for k, c in enumerate(coeffs))
    return total


def _antiderivative_table(B: PiecewisePolynomial):
    """Per-piece antiderivatives with accumulated constants.

    Returns a list of coefficient vectors F_i in powers of (t - breakpoints[i])
    with F(breakpoints[0]) = 0, plus the total mass (the antiderivative's
    value right of the support).
    """
    table = []
    acc = Fraction(0)
    for (a, b), coeffs in zip(zip(B.breakpoints, B.breakpoints[1:]), B.pieces):
        anti = [acc] + [c / (k + 1) for k, c in enumerate(coeffs)]
        table.append(anti)
        acc = _poly_eval(anti, b - a)
    return table, acc


def convolve_box(B: PiecewisePolynomial) -> PiecewisePolynomial:
    """Exact convolution with the unit box.

    (B * box)(x) = F(x + 1/2) - F(x - 1/2) for the antiderivative F of B, so
    the new breakpoints are the old ones shifted by +-1/2 and each new piece
    is a difference of re-centered antiderivative polynomials.
    """
    if len(B.breakpoints) < 2:
        return PiecewisePolynomial(B.breakpoints, B.pieces)
    table, mass = _antiderivative_table(B)
    bps = B.breakpoints
    new_bps = sorted({b - _HALF for b in bps} | {b + _HALF for b in bps})

    def anti_in_s(u: Fraction, v: Fraction, shift: Fraction) -> list[Fraction]:
        # F(x + shift) as a polynomial in s = x - u, valid for x in (u, v)
        mid = (u + v) / 2 + shift
        if mid <= bps[0]:
            return [Fraction(0)]
        if mid >= bps[-1]:
            return [mass]
        i = bisect_left(bps, mid) - 1
        # t - bps[i] = s + (u + shift - bps[i])
        return _poly_shift(table[i], u + shift - bps[i])

    pieces = []
    for u, v in zip(new_bps, new_bps[1:]):
        hi = anti_in_s(u, v, _HALF)
        lo = anti_in_s(u, v, -_HALF)
        n = max(len(hi), len(lo))
        hi += [Fraction(0)] * (n - len(hi))
        lo += [Fraction(0)] * (n - len(lo))
        pieces.append(_trim(h - l for h, l in zip(hi, lo)))

    # drop identically-zero pieces hanging off either end of the support
    while pieces and not pieces[0]:
        pieces.pop(0)
        new_bps.pop(0)
    while pieces and not pieces[-1]:
        pieces.pop()
        new_bps.pop()
    return PiecewisePolynomial(tuple(new_bps), tuple(pieces))


def bspline(k: int) -> PiecewisePolynomial:
    """Centered B-spline of order k: the k-fold self-convolution of the box.

    Support is exactly [-k/2, k/2] and the pieces have degree k-1.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"B-spline order must be a positive integer, got {k!r}")
    return _bspline_cached(k)


_BSPLINE_CACHE: dict[int, PiecewisePolynomial] = {}


def _bspline_cached(k: int) -> PiecewisePolynomial:
    if k not in _BSPLINE_CACHE:
        cur = box() if k == 1 else convolve_box(_bspline_cached(k - 1))
        _BSPLINE_CACHE[k] = cur
    return _BSPLINE_CACHE[k]


def derivative(B: PiecewisePolynomial) -> PiecewisePolynomial:
    """Piecewise derivative (one-sided at breakpoints), same breakpoint grid."""
    pieces = tuple(
        tuple(c * k for k, c in enumerate(p) if k >= 1) for p in B.pieces
    )
    return PiecewisePolynomial(B.breakpoints, pieces)


def float_evaluator(B: PiecewisePolynomial):
    """Fast float-precision point evaluator (midpoint convention at knots).

    For sampling and plotting only; exact queries go through eval_limits.
    """
    bps = [float(b) for b in B.breakpoints]
    pieces = [[float(c) for c in p] for p in B.pieces]

    def value(x: float) -> float:
        if not bps or x < bps[0] or x > bps[-1]:
            return 0.0
        i = bisect_left(bps, x)
        if i < len(bps) and bps[i] == x:
            return float(eval_limits(B, Fraction(x)).avg)
        coeffs = pieces[i - 1]
        t = x - bps[i - 1]
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    return value


def _format_offset(a: Fraction) -> str:
    if a == 0:
        return "x"
    if a < 0:
        return f"(x+{-a})"
    return f"(x-{a})"


def format_pieces(B: PiecewisePolynomial) -> str:
    """Textual dump: one `[a, b) : c0 + c1*(x-a) + ...` line per interval."""
    lines = []
    for (a, b), coeffs in zip(zip(B.breakpoints, B.breakpoints[1:]), B.pieces):
        if not coeffs:
            body = "0"
        else:
            terms = []
            for k, c in enumerate(coeffs):
                if k == 0:
                    terms.append(str(c))
                else:
                    var = _format_offset(a)
                    terms.append(f"{c}*{var}" if k == 1 else f"{c}*{var}^{k}")
            body = " + ".join(terms)
        lines.append(f"[{a}, {b}) : {body}")
    return "\n".join(lines)
