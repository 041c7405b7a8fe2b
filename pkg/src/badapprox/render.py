"""Decimal rendering of exact values for reports and serialization.

Exact rationals and quadratic numbers never pass through floating point on
the way to the user: they are rounded once, here, to a requested number of
significant digits using integer arithmetic only.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_SIG_DIGITS = 10


def decimal_str(value, sig: int = DEFAULT_SIG_DIGITS) -> str:
    """Render an exact value as a decimal string with `sig` significant digits.

    Accepts int, Fraction, or anything exposing as_fraction_approx(sig)
    (quadratic numbers do). Trailing zeros after the point are stripped, so
    exact small integers render as themselves ("0", "1").
    """
    if sig < 1:
        raise ValueError("sig must be positive")
    if hasattr(value, "as_fraction_approx"):
        # Approximate with enough slack that rounding to `sig` digits is
        # unaffected by the approximation error.
        value = value.as_fraction_approx(sig + 5)
    x = Fraction(value)
    if x == 0:
        return "0"
    neg = x < 0
    if neg:
        x = -x
    e = _floor_log10(x)
    # Integer holding exactly `sig` significant digits of x.
    shift = sig - 1 - e
    if shift >= 0:
        q = _round_frac(x * 10**shift)
    else:
        q = _round_frac(x / 10**-shift)
    if q >= 10**sig:  # rounding carried over, e.g. 9.99 -> 10.0
        q //= 10
        e += 1
    digits = str(q)
    if e < -8 or e > 20:
        mantissa = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
        mantissa = _strip(mantissa)
        return f"{'-' if neg else ''}{mantissa}e{e:+d}"
    if e >= 0:
        int_part = digits[: e + 1].ljust(e + 1, "0")
        frac_part = digits[e + 1 :]
    else:
        int_part = "0"
        frac_part = "0" * (-e - 1) + digits
    out = int_part + ("." + frac_part if frac_part else "")
    out = _strip(out)
    return "-" + out if neg else out


def _floor_log10(x: Fraction) -> int:
    """floor(log10(x)) for positive rational x, exactly."""
    e = len(str(x.numerator)) - len(str(x.denominator))
    while x >= 10 ** (e + 1):
        e += 1
    while x < 10**e:
        e -= 1
    return e


def _round_frac(x: Fraction) -> int:
    """Round to nearest integer, ties to even (same convention as round())."""
    return round(x)


def _strip(s: str) -> str:
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s
