"""Closed-form Lieb-Thirring-type constants for the Dirac operator on S^n.

Rational quantities (``c_prime``, the count prefactors) are exact
:class:`~fractions.Fraction` values; transcendental ones are ``mpmath.mpf``
evaluated at a configurable number of mantissa bits (default 256).

Two measure conventions are supported.  ``"normalized"`` integrates against
the surface measure divided by the total area; ``"surface"`` uses the plain
surface measure.  A lower-bound constant for a density power ``p`` converts
from normalized to surface measure by the factor ``area**(p - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from ._precision import DEFAULT_PREC, check_prec, mpq

__all__ = [
    "BoundSet",
    "MEASURES",
    "TABLE_PLACES",
    "bound_set",
    "build_table",
    "c_lower",
    "c_prime",
    "classical_lt",
    "count_prefactor",
    "dirac_lt_best",
    "dirac_lt_lower",
    "dirac_sq_lt_lower",
    "gamma_half",
    "k_upper",
    "kowalski_lower",
    "sphere_surface",
]

MEASURES = ("normalized", "surface")

# decimals printed per column in the two published tables
TABLE_PLACES = {
    "table1": {"K_lower": 6, "K_prime_lower": 7},
    "table2": {"kowalski": 7, "improved": 7},
}


def _check_n(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise ValueError(f"n must be an integer >= {minimum}, got {n!r}")
    return n


def _check_measure(measure: str) -> str:
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")
    return measure


def gamma_half(twice: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Gamma(twice/2) for a positive integer ``twice``, by exact downward recursion.

    Integers reduce to a factorial; half-integers to ``sqrt(pi)`` times a
    rational product.
    """
    if isinstance(twice, bool) or not isinstance(twice, int) or twice < 1:
        raise ValueError(f"argument must be a positive integer, got {twice!r}")
    check_prec(prec)
    with mpmath.workprec(prec + 16):
        if twice % 2 == 0:
            return +mpmath.mpf(math.factorial(twice // 2 - 1))
        # Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
        m = (twice - 1) // 2
        coeff = Fraction(math.factorial(2 * m), 4**m * math.factorial(m))
        return mpq(coeff) * mpmath.sqrt(mpmath.pi)


def sphere_surface(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Total surface measure of the unit n-sphere, ``2 pi^((n+1)/2) / Gamma((n+1)/2)``."""
    _check_n(n)
    check_prec(prec)
    with mpmath.workprec(prec + 16):
        g = gamma_half(n + 1, prec)
        if (n + 1) % 2 == 0:
            pi_power = mpmath.pi ** ((n + 1) // 2)
        else:
            pi_power = mpmath.pi ** (n // 2) * mpmath.sqrt(mpmath.pi)
        return 2 * pi_power / g


def classical_lt(gamma, n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Semiclassical constant ``Gamma(g+1) / (2^n pi^(n/2) Gamma(g + n/2 + 1))``."""
    _check_n(n)
    check_prec(prec)
    g = Fraction(gamma)
    if g < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma!r}")
    with mpmath.workprec(prec + 16):
        twice = 2 * g
        if twice.denominator == 1:
            top = gamma_half(int(twice) + 2, prec)
            bottom = gamma_half(int(twice) + n + 2, prec)
        else:
            top = mpmath.gamma(mpq(g) + 1)
            bottom = mpmath.gamma(mpq(g) + mpmath.mpf(n) / 2 + 1)
        return top / (2**n * mpmath.pi ** (mpmath.mpf(n) / 2) * bottom)


def count_prefactor(n: int, doubled: bool = False) -> Fraction:
    """``2**(n//2) / n!``, or ``2**(n//2 + 1) / n!`` when both signs are counted."""
    _check_n(n)
    return Fraction(2 ** (n // 2 + (1 if doubled else 0)), math.factorial(n))


def c_lower(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Minimum of the normalized first-moment ratio above the spectral gap.

    This is the value of ``I1(x) / x**((n+1)/n)`` at its critical point
    ``x_plus``, in closed form.
    """
    _check_n(n)
    check_prec(prec)
    with mpmath.workprec(prec + 32):
        N = mpmath.mpf(n)
        denom = N**2 + 3 * N + 2
        gap = (mpmath.sqrt(N + 1) - mpmath.sqrt(N)) ** (2 / N)
        tail = gap / (N + 1) ** ((N + 1) / N) * N * (2 * mpmath.sqrt(N * (N + 1)) - N) / denom
        return N**2 / denom - tail


def c_prime(n: int) -> Fraction:
    """Exact floor of the normalized energy-weighted ratio."""
    _check_n(n)
    if n == 1:
        return Fraction(7, 360)
    return Fraction(n**4 - 6 * n**2 + 6 * n + 8, 2 * n**4 + 16 * n**3 + 42 * n**2 + 44 * n + 16)


def dirac_lt_lower(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """General-n lower bound ``n!^(1/n) 2^(-(n//2)/n) c_n`` (normalized measure)."""
    _check_n(n)
    with mpmath.workprec(prec + 32):
        N = mpmath.mpf(n)
        return mpmath.mpf(math.factorial(n)) ** (1 / N) * mpmath.mpf(2) ** (-(n // 2) / N) * c_lower(n, prec)


def dirac_lt_best(n: int, prec: int = DEFAULT_PREC) -> tuple[mpmath.mpf, str]:
    """Best available lower bound and its source.

    On S^2 the dedicated bound 1/3 beats the general formula (about 0.3038).
    """
    general = dirac_lt_lower(n, prec)
    if n == 2:
        with mpmath.workprec(prec + 16):
            third = mpmath.mpf(1) / 3
        if third > general:
            return third, "s2_sharp"
    return general, "general_n"


def dirac_sq_lt_lower(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Lower bound for the squared operator, ``c'_n n!^(2/n) 2^(1 - (2/n)(n//2 + 1))``."""
    _check_n(n)
    check_prec(prec)
    with mpmath.workprec(prec + 32):
        N = mpmath.mpf(n)
        return (
            mpq(c_prime(n))
            * mpmath.mpf(math.factorial(n)) ** (2 / N)
            * mpmath.mpf(2) ** (1 - 2 * (n // 2 + 1) / N)
        )


def kowalski_lower(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Comparison gradient bound ``n!^(2/n) / (n+4) * (n/(n+2))^((n+2)/n)``, n >= 2."""
    _check_n(n, 2)
    check_prec(prec)
    with mpmath.workprec(prec + 32):
        N = mpmath.mpf(n)
        return mpmath.mpf(math.factorial(n)) ** (2 / N) / (N + 4) * (N / (N + 2)) ** ((N + 2) / N)


def k_upper(n: int, prec: int = DEFAULT_PREC, measure: str = "surface", source: str = "improved") -> mpmath.mpf:
    """Upper bound on the classical constant ``k_{S^n}``.

    ``source="improved"`` inverts the squared-Dirac bound, ``"kowalski"``
    the comparison bound.  Surface measure multiplies by ``area**(-2/n)``.
    """
    _check_n(n, 2)
    _check_measure(measure)
    if source == "improved":
        lower = dirac_sq_lt_lower(n, prec)
    elif source == "kowalski":
        lower = kowalski_lower(n, prec)
    else:
        raise ValueError(f"source must be 'improved' or 'kowalski', got {source!r}")
    with mpmath.workprec(prec + 32):
        value = 1 / lower
        if measure == "surface":
            value *= sphere_surface(n, prec) ** (-mpmath.mpf(2) / n)
        return value


def _to_measure(value, n: int, power_minus_one: Fraction, measure: str, prec: int):
    if measure == "normalized" or value is None:
        return value
    with mpmath.workprec(prec + 32):
        return value * sphere_surface(n, prec) ** mpq(power_minus_one)


@dataclass(frozen=True)
class BoundSet:
    """Every constant attached to one dimension, in one measure convention.

    ``dirac_lower`` is the best available first-moment bound; on S^2 it is
    1/3 and ``dirac_lower_source`` says so.  ``kowalski_lower`` and the
    ``k_upper_*`` fields are ``None`` for n = 1.
    """

    n: int
    measure: str
    prec: int
    c_n: mpmath.mpf
    c_n_prime: Fraction
    K_n: Fraction
    K_n_prime: Fraction
    dirac_lower: mpmath.mpf
    dirac_lower_source: str
    dirac_lower_general: mpmath.mpf
    dirac_sq_lower: mpmath.mpf
    kowalski_lower: Optional[mpmath.mpf]
    k_upper_improved: Optional[mpmath.mpf]
    k_upper_kowalski: Optional[mpmath.mpf]


def bound_set(n: int, prec: int = DEFAULT_PREC, measure: str = "normalized") -> BoundSet:
    _check_n(n)
    check_prec(prec)
    _check_measure(measure)
    best, source = dirac_lt_best(n, prec)
    first = Fraction(1, n)
    second = Fraction(2, n)
    kow = kowalski_lower(n, prec) if n >= 2 else None
    return BoundSet(
        n=n,
        measure=measure,
        prec=prec,
        c_n=c_lower(n, prec),
        c_n_prime=c_prime(n),
        K_n=count_prefactor(n),
        K_n_prime=count_prefactor(n, doubled=True),
        dirac_lower=_to_measure(best, n, first, measure, prec),
        dirac_lower_source=source,
        dirac_lower_general=_to_measure(dirac_lt_lower(n, prec), n, first, measure, prec),
        dirac_sq_lower=_to_measure(dirac_sq_lt_lower(n, prec), n, second, measure, prec),
        kowalski_lower=_to_measure(kow, n, second, measure, prec),
        k_upper_improved=k_upper(n, prec, measure, "improved") if n >= 2 else None,
        k_upper_kowalski=k_upper(n, prec, measure, "kowalski") if n >= 2 else None,
    )


def build_table(which: str, n_range: Iterable[int], prec: int = DEFAULT_PREC,
                measure: Optional[str] = None) -> list[dict]:
    """Rows of the two published tables.

    ``table1`` holds the lower bounds for the first-moment and squared Dirac
    constants (normalized measure by default); ``table2`` the two upper
    bounds on the classical constant (surface measure by default).  Rows
    whose ``n`` is outside a column's domain carry ``None`` there and a
    ``note``.
    """
    check_prec(prec)
    if which not in TABLE_PLACES:
        raise ValueError(f"unknown table {which!r}; expected 'table1' or 'table2'")
    if measure is None:
        measure = "normalized" if which == "table1" else "surface"
    _check_measure(measure)
    rows = []
    for n in n_range:
        _check_n(n)
        if which == "table1":
            value, source = dirac_lt_best(n, prec)
            rows.append({
                "n": n,
                "K_lower": _to_measure(value, n, Fraction(1, n), measure, prec),
                "K_prime_lower": _to_measure(dirac_sq_lt_lower(n, prec), n, Fraction(2, n), measure, prec),
                "source": source,
                "measure": measure,
            })
        elif which == "table2":
            row = {"n": n, "kowalski": None, "improved": None, "measure": measure}
            if n >= 2:
                row["kowalski"] = k_upper(n, prec, measure, "kowalski")
                row["improved"] = k_upper(n, prec, measure, "improved")
            else:
                row["note"] = "requires n >= 2"
            rows.append(row)
    return rows
