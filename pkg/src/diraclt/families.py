"""Exact checks of the inequalities on filled-shell orthonormal families.

A filled shell takes every normalised eigenfunction of one degree.  By the
addition formula its density is constant and equal to the multiplicity
(normalised measure), so both sides of each inequality reduce to sums over
multiplicities and eigenvalues.  No eigenfunction is ever built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from ._precision import DEFAULT_PREC, check_prec, mpq
from .constants import dirac_lt_best, dirac_sq_lt_lower, kowalski_lower
from .spectrum import dirac_eigenvalue, dirac_multiplicity

__all__ = [
    "KINDS",
    "Bracket",
    "ShellReport",
    "bracket_scan",
    "dirac_shell_report",
    "scalar_eigenvalue",
    "scalar_multiplicity",
    "scalar_shell_report",
    "shell_report",
]

KINDS = ("dirac_positive", "dirac_both_signs", "scalar_laplace")


@dataclass(frozen=True)
class ShellReport:
    """Both sides of one inequality on the family of shells up to ``degree``.

    ``lhs`` and ``rho`` are exact; ``ratio = lhs / rho**power`` is an upper
    bracket for the best constant, reported again as ``empirical_constant``.
    For scalar families the comparison gradient bound is checked too.
    """

    n: int
    kind: str
    degree: int
    lhs: Fraction
    rho: int
    power: Fraction
    rhs_constant: mpmath.mpf
    rhs: mpmath.mpf
    ratio: mpmath.mpf
    satisfied: bool
    empirical_constant: mpmath.mpf
    kowalski_constant: Optional[mpmath.mpf] = None
    kowalski_satisfied: Optional[bool] = None


def _check(n, name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def _finish(n, kind, degree, lhs, rho, power, constant, prec, kowalski=None):
    with mpmath.workprec(prec + 16):
        density = mpmath.mpf(rho) ** mpq(power)
        rhs = constant * density
        ratio = mpq(lhs) / density
        kow_ok = None if kowalski is None else bool(mpq(lhs) >= kowalski * density)
    return ShellReport(
        n=n,
        kind=kind,
        degree=degree,
        lhs=lhs,
        rho=rho,
        power=power,
        rhs_constant=constant,
        rhs=rhs,
        ratio=ratio,
        satisfied=bool(mpq(lhs) >= rhs),
        empirical_constant=ratio,
        kowalski_constant=kowalski,
        kowalski_satisfied=kow_ok,
    )


def dirac_shell_report(n: int, K: int, squared: bool = False, prec: int = DEFAULT_PREC) -> ShellReport:
    """Dirac shells of degree ``0..K``.

    Unsquared: positive shells only, ``lhs = sum m_k (n/2 + k)`` against the
    first-moment bound with power ``(n+1)/n``.  Squared: both signs,
    ``lhs = sum 2 m_k (n/2 + k)**2`` against the squared bound with power
    ``(n+2)/n``.
    """
    _check(n, "K", K, 0)
    check_prec(prec)
    lhs = Fraction(0)
    rho = 0
    for k in range(K + 1):
        m = dirac_multiplicity(n, k)
        lam = dirac_eigenvalue(n, k)
        if squared:
            lhs += 2 * m * lam * lam
            rho += 2 * m
        else:
            lhs += m * lam
            rho += m
    if squared:
        kind, power, constant = "dirac_both_signs", Fraction(n + 2, n), dirac_sq_lt_lower(n, prec)
    else:
        kind, power, constant = "dirac_positive", Fraction(n + 1, n), dirac_lt_best(n, prec)[0]
    return _finish(n, kind, K, lhs, rho, power, constant, prec)


def scalar_multiplicity(n: int, l: int) -> int:
    """Dimension of the degree-``l`` spherical harmonics on S^n.

    ``(2l + n - 1) / (n - 1) * C(l + n - 2, l)`` for ``n >= 2``; on the circle
    it is 2 for every ``l >= 1`` (``cos``/``sin``) and 1 for ``l = 0``.
    """
    _check(n, "l", l, 0)
    if n == 1:
        return 1 if l == 0 else 2
    num = (2 * l + n - 1) * math.comb(l + n - 2, l)
    assert num % (n - 1) == 0
    return num // (n - 1)


def scalar_eigenvalue(n: int, l: int) -> int:
    """``l(l + n - 1)``, the eigenvalue of minus the Laplacian on degree ``l``."""
    _check(n, "l", l, 0)
    return l * (l + n - 1)


def scalar_shell_report(n: int, L: int, prec: int = DEFAULT_PREC) -> ShellReport:
    """Scalar harmonics of degree ``1..L`` (degree 0 is constant and excluded).

    ``lhs = sum N(n,l) l(l+n-1)`` is the total gradient energy; the density
    power is ``(n+2)/n``.  Checked against the squared-Dirac bound, which
    also holds for scalar functions, and against the comparison gradient
    bound when ``n >= 2``.
    """
    _check(n, "L", L, 1)
    check_prec(prec)
    lhs = 0
    rho = 0
    for l in range(1, L + 1):
        N = scalar_multiplicity(n, l)
        lhs += N * scalar_eigenvalue(n, l)
        rho += N
    kowalski = kowalski_lower(n, prec) if n >= 2 else None
    return _finish(n, "scalar_laplace", L, Fraction(lhs), rho, Fraction(n + 2, n),
                   dirac_sq_lt_lower(n, prec), prec, kowalski)


def shell_report(n: int, kind: str, degree: int, prec: int = DEFAULT_PREC) -> ShellReport:
    if kind == "dirac_positive":
        return dirac_shell_report(n, degree, False, prec)
    if kind == "dirac_both_signs":
        return dirac_shell_report(n, degree, True, prec)
    if kind == "scalar_laplace":
        return scalar_shell_report(n, degree, prec)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


@dataclass(frozen=True)
class Bracket:
    """``[lower, upper]`` around the unknown best constant.

    ``lower`` is proven; ``upper`` is the smallest filled-shell ratio seen,
    an empirical edge since filled shells need not be extremal.
    ``turning_point`` is the degree where the ratio peaks; past it the
    sequence was observed to be non-increasing (``monotone_tail``).
    """

    n: int
    kind: str
    lower: mpmath.mpf
    upper: mpmath.mpf
    argmin: int
    turning_point: int
    monotone_tail: bool
    all_satisfied: bool
    reports: tuple


def bracket_scan(n: int, kind: str, K_max: int, prec: int = DEFAULT_PREC) -> Bracket:
    _check(n, "K_max", K_max, 1)
    start = 1 if kind == "scalar_laplace" else 0
    reports = tuple(shell_report(n, kind, d, prec) for d in range(start, K_max + 1))
    ratios = [r.ratio for r in reports]
    argmin = min(range(len(ratios)), key=ratios.__getitem__)
    peak = max(range(len(ratios)), key=ratios.__getitem__)
    with mpmath.workprec(prec):
        slack = mpmath.ldexp(1, -(prec - 8))
        tail = all(b <= a * (1 + slack) for a, b in zip(ratios[peak:], ratios[peak + 1:]))
    return Bracket(
        n=n,
        kind=kind,
        lower=reports[0].rhs_constant,
        upper=ratios[argmin],
        argmin=start + argmin,
        turning_point=start + peak,
        monotone_tail=tail,
        all_satisfied=all(r.satisfied for r in reports),
        reports=reports,
    )
