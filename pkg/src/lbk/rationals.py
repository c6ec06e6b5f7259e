"""Exact rational parsing and formatting helpers.

Periods, dilation factors and sample nodes are kept as `fractions.Fraction`
throughout so that membership tests (is this node a kernel breakpoint? an
excluded point?) are decidable exactly.  Command-line rationals are `p/q`
strings or decimal strings with at most 12 fractional digits, both converted
without rounding.
"""

from __future__ import annotations

from fractions import Fraction

MAX_DECIMAL_DIGITS = 12


def parse_rational(text: str) -> Fraction:
    """Parse `p/q`, an integer, or a short decimal string into an exact Fraction."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            return Fraction(int(num.strip()), int(den.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {text!r}: {exc}") from None
    if "." in s:
        whole, _, frac = s.partition(".")
        if len(frac) > MAX_DECIMAL_DIGITS:
            raise ValueError(
                f"decimal literal {text!r} has more than {MAX_DECIMAL_DIGITS} "
                "fractional digits; pass an explicit p/q instead"
            )
        try:
            return Fraction(s)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def as_fraction(value) -> Fraction:
    """Coerce int/float/Fraction/str to an exact Fraction.

    Floats convert exactly (every float is a dyadic rational), which is how
    irrational scale factors such as 1/pi enter the exact layer: the caller's
    double is honored bit for bit.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")
