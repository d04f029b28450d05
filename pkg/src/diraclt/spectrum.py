"""Dirac spectrum on the n-sphere: eigenvalues, multiplicities and counts.

The Dirac operator on S^n has eigenvalues ``±(n/2 + k)`` for ``k = 0, 1, ...``,
each with multiplicity ``2**(n//2) * C(k + n - 1, k)``.  Everything here is
exact: eigenvalues are :class:`fractions.Fraction`, multiplicities and counts
are Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Iterator

import mpmath

__all__ = [
    "SpectralLine",
    "CountReport",
    "as_fraction",
    "dirac_eigenvalue",
    "dirac_multiplicity",
    "spectral_lines",
    "cumulative_count",
    "count_envelope",
    "count_report",
    "count_jumps",
]


def _check_dim(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"sphere dimension must be a positive integer, got {n!r}")
    return n


def _check_degree(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    return k


def _sign(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1/-1 or '+'/'-', got {sign!r}")


def as_fraction(x) -> Fraction:
    """Convert an int, Fraction, float or mpf to the exact rational it stores."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"cannot convert {x} to a rational")
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2) ** exp
    if isinstance(x, Real):
        return Fraction(float(x))
    raise TypeError(f"expected a real number, got {type(x).__name__}")


@dataclass(frozen=True)
class SpectralLine:
    """One eigenvalue level ``sign * (n/2 + k)`` with its multiplicity."""

    n: int
    k: int
    sign: int
    eigenvalue: Fraction
    multiplicity: int


@dataclass(frozen=True)
class CountReport:
    n: int
    energy: Fraction
    exact_count: int
    envelope: Fraction


def dirac_eigenvalue(n: int, k: int, sign=1) -> Fraction:
    """Return ``sign * (n/2 + k)`` exactly."""
    _check_dim(n)
    _check_degree(k)
    return _sign(sign) * (Fraction(n, 2) + k)


def dirac_multiplicity(n: int, k: int) -> int:
    """Multiplicity of each of the eigenvalues ``±(n/2 + k)``."""
    _check_dim(n)
    _check_degree(k)
    return 2 ** (n // 2) * math.comb(k + n - 1, k)


def spectral_lines(n: int, k_max: int, signs=(1,)) -> Iterator[SpectralLine]:
    """Yield the levels with degree ``0 <= k <= k_max`` for each requested sign."""
    _check_dim(n)
    for k in range(_check_degree(k_max) + 1):
        m = dirac_multiplicity(n, k)
        for s in signs:
            s = _sign(s)
            yield SpectralLine(n, k, s, dirac_eigenvalue(n, k, s), m)


def _levels_below(n: int, energy: Fraction) -> int:
    # number of degrees k >= 0 with n/2 + k < E, i.e. ceil(E - n/2) clipped at 0
    return max(0, math.ceil(energy - Fraction(n, 2)))


def cumulative_count(n: int, energy) -> int:
    """Number of positive eigenvalues strictly below ``energy``, with multiplicity.

    Uses the hockey-stick identity ``sum_{k<K} C(k+n-1, k) = C(K-1+n, K-1)``
    where ``K = ceil(E - n/2)`` is the number of levels below ``E``.
    """
    _check_dim(n)
    E = as_fraction(energy)
    if E < 0:
        raise ValueError(f"energy must be non-negative, got {energy!r}")
    levels = _levels_below(n, E)
    if levels == 0:
        return 0
    return 2 ** (n // 2) * math.comb(levels - 1 + n, levels - 1)


def count_envelope(n: int, energy, doubled: bool = False) -> Fraction:
    """Polynomial upper envelope ``2**(n//2 + doubled) (E + 1/2)**n / n!`` for ``E > n/2``.

    Returns 0 for ``E <= n/2``.  ``doubled`` counts both signs of the
    spectrum, as needed for the squared operator.
    """
    _check_dim(n)
    E = as_fraction(energy)
    if E < 0:
        raise ValueError(f"energy must be non-negative, got {energy!r}")
    if E <= Fraction(n, 2):
        return Fraction(0)
    scale = 2 ** (n // 2 + (1 if doubled else 0))
    return scale * (E + Fraction(1, 2)) ** n / math.factorial(n)


def count_report(n: int, energy) -> CountReport:
    E = as_fraction(energy)
    return CountReport(n, E, cumulative_count(n, E), count_envelope(n, E))


def count_jumps(n: int, k_max: int) -> list[tuple[Fraction, int]]:
    """Breakpoints of the counting function: pairs ``(n/2 + k, count just above)``.

    On ``(n/2 + k, n/2 + k + 1]`` the count equals the returned value for ``k``.
    """
    _check_dim(n)
    out = []
    total = 0
    for k in range(_check_degree(k_max) + 1):
        total += dirac_multiplicity(n, k)
        out.append((Fraction(n, 2) + k, total))
    return out
