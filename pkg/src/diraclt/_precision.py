from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import mpmath

DEFAULT_PREC = 256
MIN_PREC = 64


def check_prec(prec: int) -> int:
    if isinstance(prec, bool) or not isinstance(prec, int) or prec < MIN_PREC:
        raise ValueError(f"precision must be an integer >= {MIN_PREC} bits, got {prec!r}")
    return prec


def mpq(x: Fraction) -> mpmath.mpf:
    """Rational to mpf at the current working precision."""
    return mpmath.mpf(x.numerator) / x.denominator


def fixed(x, places: int) -> str:
    """Round ``x`` to ``places`` decimals (half-even) without scientific notation."""
    if isinstance(x, Fraction):
        d = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        digits = max(30, places + 20)
        s = mpmath.nstr(mpmath.mpf(x), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
        d = Decimal(s)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def sig(x, digits: int = 16) -> str:
    """Decimal string with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        with mpmath.workdps(digits + 10):
            x = mpq(x)
    return mpmath.nstr(mpmath.mpf(x), digits)


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
