"""Spectral integrals and the minimisation of their normalised ratios.

All densities here are in normalised coordinates ``x = rho / K`` where ``K``
is the count prefactor, so the counting envelope is simply ``(E + 1/2)**n``
above the gap ``E = n/2``.  :func:`theorem_constant` converts a floor found
in these coordinates back to the constant of the corresponding inequality.

Two weights are supported: ``"unit"`` integrates
``(sqrt(x) - sqrt(C(E)))_+^2`` and is compared against ``x**((n+1)/n)``;
``"energy"`` multiplies the integrand by ``E`` and uses ``x**((n+2)/n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from ._precision import DEFAULT_PREC, check_prec, mpq
from .constants import c_lower, c_prime, count_prefactor
from .quadrature import gauss_legendre_certified, gauss_legendre_np_certified
from .spectrum import as_fraction

__all__ = [
    "CriticalPoints",
    "GridSpec",
    "InfimumReport",
    "IntegralReport",
    "WEIGHTS",
    "a_coefficient",
    "b_coefficient",
    "breakpoint_limits",
    "critical_points",
    "gap_breakpoint",
    "i1_closed",
    "i1_ratio",
    "i1_ratio_derivative",
    "integral_oracle",
    "normalized_count",
    "q_r_decomposition",
    "ratio_power",
    "ratio_scan",
    "s2_closed_form",
    "s2_envelope",
    "theorem_constant",
]

WEIGHTS = ("unit", "energy")
VARIANTS = ("exact_count", "envelope")
SCAN_TOLERANCE = 1e-9


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return n


def _check_weight(weight):
    if weight not in WEIGHTS:
        raise ValueError(f"weight must be one of {WEIGHTS}, got {weight!r}")
    return weight


def ratio_power(n: int, weight: str) -> Fraction:
    """Density exponent: ``(n+1)/n`` for unit weight, ``(n+2)/n`` for energy weight."""
    _check_weight(weight)
    return Fraction(n + (1 if weight == "unit" else 2), n)


def gap_breakpoint(n: int) -> Fraction:
    """``((n+1)/2)**n``: below it only the spectral gap contributes."""
    return Fraction(n + 1, 2) ** _check_n(n)


def normalized_count(n: int, levels: int) -> int:
    """Normalised count ``n! * C(levels - 1 + n, levels - 1)`` of the lowest ``levels`` shells."""
    if levels <= 0:
        return 0
    return math.factorial(n) * math.comb(levels - 1 + n, levels - 1)


@dataclass(frozen=True)
class IntegralReport:
    """One evaluation of the spectral integral at normalised density ``rho``.

    ``branch`` is the index of the last active segment of the counting
    function (the integer ``M`` on S^2), or the number of unit panels for
    the envelope.  ``error`` is the quadrature error estimate, zero for
    segment-exact evaluations.
    """

    n: int
    rho: mpmath.mpf
    weight: str
    variant: str
    value: mpmath.mpf
    ratio: mpmath.mpf
    branch: int
    error: mpmath.mpf = mpmath.mpf(0)


def _segment_weight(weight, a, b):
    return b - a if weight == "unit" else (b * b - a * a) / 2


def _exact_count_integral(n, rho, weight):
    half_n = mpmath.mpf(n) / 2
    total = _segment_weight(weight, mpmath.mpf(0), half_n) * rho
    root = mpmath.sqrt(rho)
    branch = 0
    k = 0
    while True:
        c = normalized_count(n, k + 1)
        if c >= rho:
            break
        a = half_n + k
        total += _segment_weight(weight, a, a + 1) * (root - mpmath.sqrt(c)) ** 2
        k += 1
        branch = k
    return total, branch, mpmath.mpf(0)


def _envelope_integral(n, rho, weight, prec):
    half_n = mpmath.mpf(n) / 2
    total = _segment_weight(weight, mpmath.mpf(0), half_n) * rho
    cutoff = mpmath.root(rho, n) - mpmath.mpf(1) / 2
    if cutoff <= half_n:
        return total, 0, mpmath.mpf(0)
    root = mpmath.sqrt(rho)
    if weight == "unit":
        def f(E):
            return (root - (E + mpmath.mpf(1) / 2) ** (half_n)) ** 2
    else:
        def f(E):
            return E * (root - (E + mpmath.mpf(1) / 2) ** (half_n)) ** 2
    value, err = gauss_legendre_certified(f, half_n, cutoff, prec)
    return total + value, int(mpmath.ceil(cutoff - half_n)), err


def integral_oracle(n: int, rho, weight: str = "unit", variant: str = "envelope",
                    prec: int = DEFAULT_PREC) -> IntegralReport:
    """Evaluate the spectral integral segment by segment.

    ``exact_count`` uses the true counting function, which is constant
    between eigenvalues, so every segment is integrated in closed form.
    ``envelope`` uses ``(E + 1/2)**n`` above the gap and certified
    Gauss-Legendre panels up to the cutoff ``rho**(1/n) - 1/2``.
    """
    _check_n(n)
    _check_weight(weight)
    check_prec(prec)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    with mpmath.workprec(prec + 16):
        rho = mpmath.mpf(rho) if not isinstance(rho, Fraction) else mpq(rho)
        if not rho > 0:
            raise ValueError(f"rho must be positive, got {rho}")
        if variant == "exact_count":
            value, branch, err = _exact_count_integral(n, rho, weight)
        else:
            value, branch, err = _envelope_integral(n, rho, weight, prec)
        ratio = value / rho ** mpq(ratio_power(n, weight))
    return IntegralReport(n, rho, weight, variant, value, ratio, branch, err)


def _s2_branch(rho) -> int:
    r = as_fraction(rho)
    M = max(0, int((math.isqrt(int(4 * r) + 1) - 1) // 2))
    while M * M + M > r:
        M -= 1
    while (M + 1) * (M + 1) + (M + 1) <= r:
        M += 1
    return M


def s2_closed_form(rho, prec: int = DEFAULT_PREC) -> IntegralReport:
    """Closed form of the first-moment integral on S^2.

    With ``M*M + M <= rho < (M+1)**2 + M + 1`` the integral equals
    ``(M+1) rho - 2 sqrt(rho) sum_{m<=M} sqrt(m*m + m) + M(M+1)(M+2)/3``.
    """
    check_prec(prec)
    with mpmath.workprec(prec + 16):
        rho = mpmath.mpf(rho) if not isinstance(rho, Fraction) else mpq(rho)
        if not rho > 0:
            raise ValueError(f"rho must be positive, got {rho}")
        M = _s2_branch(rho)
        roots = mpmath.fsum(mpmath.sqrt(m * m + m) for m in range(M + 1))
        value = (M + 1) * rho - 2 * mpmath.sqrt(rho) * roots + mpmath.mpf(M * (M + 1) * (M + 2)) / 3
        ratio = value / rho ** mpmath.mpf(1.5)
    return IntegralReport(2, rho, "unit", "closed_form", value, ratio, M)


def s2_envelope(M: int, prec: int = DEFAULT_PREC) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Values of the S^2 lower envelope at both ends of branch ``M``.

    The left end ``(2M+1) / (6 sqrt(M(M+1)))`` is infinite for ``M = 0``;
    the right end ``(2M+3) / (6 sqrt((M+1)(M+2)))`` is the branch minimum and
    decreases to 1/3.
    """
    if isinstance(M, bool) or not isinstance(M, int) or M < 0:
        raise ValueError(f"M must be a non-negative integer, got {M!r}")
    with mpmath.workprec(prec + 16):
        left = mpmath.inf if M == 0 else (2 * M + 1) / (6 * mpmath.sqrt(M * (M + 1)))
        right = (2 * M + 3) / (6 * mpmath.sqrt((M + 1) * (M + 2)))
    return left, right


def a_coefficient(n: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    with mpmath.workprec(prec + 16):
        h = mpmath.mpf(n + 1) / 2
        return 2 * h ** (mpmath.mpf(n + 4) / 2) / (n + 4) - h ** (mpmath.mpf(n + 2) / 2) / (n + 2)


def b_coefficient(n: int) -> Fraction:
    return Fraction((n + 1) ** n * (n * n + n - 1), 2 ** (n + 2) * (n + 2))


def _i1(n, x, weight, prec):
    N = mpmath.mpf(n)
    if weight == "unit":
        return (
            mpmath.sqrt(x) * (N + 1) ** (N / 2 + 1) / (2 ** (N / 2 - 1) * (N + 2))
            + x ** ((N + 1) / N) * N**2 / (N**2 + 3 * N + 2)
            - x / 2
            - (N + 1) ** n / mpmath.mpf(2) ** (n + 1)
        )
    return (
        x / 8
        + N**2 * x / (2 * (N + 2)) * (x ** (2 / N) / (N + 4) - x ** (1 / N) / (N + 1))
        + 2 * mpmath.sqrt(x) * a_coefficient(n, prec)
        - mpq(b_coefficient(n))
    )


def _as_mpf(x):
    return mpq(x) if isinstance(x, Fraction) else mpmath.mpf(x)


def i1_closed(n: int, rho_n, weight: str = "unit", prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Closed form of the envelope integral above the gap breakpoint."""
    _check_n(n)
    _check_weight(weight)
    check_prec(prec)
    with mpmath.workprec(prec + 16):
        x = _as_mpf(rho_n)
        if not x > mpq(gap_breakpoint(n)):
            raise ValueError(f"rho_n must exceed ((n+1)/2)**n = {gap_breakpoint(n)}, got {x}")
        return _i1(n, x, weight, prec)


def i1_ratio(n: int, x, weight: str = "unit", prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``i1_closed / x**p`` with the weight's density exponent ``p``."""
    with mpmath.workprec(prec + 16):
        x = _as_mpf(x)
        return i1_closed(n, x, weight, prec) / x ** mpq(ratio_power(n, weight))


def i1_ratio_derivative(n: int, x, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Analytic derivative of the unit-weight ratio ``I1(x) / x**((n+1)/n)``."""
    _check_n(n)
    with mpmath.workprec(prec + 16):
        x = _as_mpf(x)
        N = mpmath.mpf(n)
        return (
            (N + 1) ** (n + 1) / (N * 2 ** (n + 1)) * x ** (-(2 * N + 1) / N)
            + x ** (-(N + 1) / N) / (2 * N)
            - (N + 1) ** (N / 2 + 1) / (N * 2 ** (N / 2)) * x ** (-(3 * N + 2) / (2 * N))
        )


def breakpoint_limits(n: int, weight: str = "unit", prec: int = DEFAULT_PREC) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Ratio at ``x = ((n+1)/2)**n`` from the gap-only side and from the closed form."""
    _check_n(n)
    _check_weight(weight)
    with mpmath.workprec(prec + 16):
        x = mpq(gap_breakpoint(n))
        gap = mpmath.mpf(n) / 2 if weight == "unit" else mpmath.mpf(n * n) / 8
        p = mpq(ratio_power(n, weight))
        left = gap * x / x**p
        right = _i1(n, x, weight, prec) / x**p
    return left, right


@dataclass(frozen=True)
class CriticalPoints:
    """Critical points of the unit-weight ratio and the quadratic residual.

    ``residual`` is the largest absolute value of the quadratic in ``u`` at
    ``u_minus`` and ``u_plus``, relative to its constant term.
    """

    n: int
    x_minus: mpmath.mpf
    x_plus: mpmath.mpf
    u_minus: mpmath.mpf
    u_plus: mpmath.mpf
    residual: mpmath.mpf


def critical_points(n: int, prec: int = DEFAULT_PREC) -> CriticalPoints:
    _check_n(n)
    check_prec(prec)
    with mpmath.workprec(prec + 16):
        N = mpmath.mpf(n)
        base = ((N + 1) / 2) ** (N / 2) * mpmath.sqrt(N + 1)
        u_minus = base * (mpmath.sqrt(N + 1) - mpmath.sqrt(N))
        u_plus = base * (mpmath.sqrt(N + 1) + mpmath.sqrt(N))

        def quadratic(u):
            return 2**n * u * u - 2 ** ((N + 2) / 2) * (N + 1) ** ((N + 2) / 2) * u + (N + 1) ** (n + 1)

        scale = (N + 1) ** (n + 1)
        residual = max(abs(quadratic(u_minus)), abs(quadratic(u_plus))) / scale
        return CriticalPoints(n, u_minus**2, u_plus**2, u_minus, u_plus, residual)


def q_r_decomposition(n: int, y, prec: int = DEFAULT_PREC) -> tuple[mpmath.mpf, mpmath.mpf, Fraction]:
    """Split the energy-weighted ratio, as a function of ``y = x**(-1/n)``, into
    a quadratic ``q`` plus remainder ``R``.

    Returns ``(q(y), R(y), y0)`` where ``y0 = 2n^2 / ((n+1)(n+2))`` minimises ``q``.
    """
    _check_n(n)
    with mpmath.workprec(prec + 16):
        y = _as_mpf(y)
        if not y > 0:
            raise ValueError(f"y must be positive, got {y}")
        N = mpmath.mpf(n)
        q = y * y / 8 - N**2 * y / (2 * (N + 1) * (N + 2)) + N**2 / (2 * (N + 2) * (N + 4))
        R = 2 * a_coefficient(n, prec) * y ** ((N + 4) / 2) - mpq(b_coefficient(n)) * y ** (N + 2)
    return q, R, Fraction(2 * n * n, (n + 1) * (n + 2))


def theorem_constant(n: int, floor, weight: str = "unit", prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Undo the count-prefactor rescaling.

    A floor ``f`` of the normalised ratio yields the inequality constant
    ``f * K**(-1/n)`` for unit weight and ``2 f * K'**(-2/n)`` for energy
    weight, where the doubled prefactor ``K'`` counts both signs.
    """
    _check_weight(weight)
    with mpmath.workprec(prec + 16):
        f = _as_mpf(floor)
        if weight == "unit":
            return f * mpq(count_prefactor(n)) ** (-mpmath.mpf(1) / n)
        return 2 * f * mpq(count_prefactor(n, doubled=True)) ** (-mpmath.mpf(2) / n)


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced grid on ``[rho_min, rho_max_factor * x_plus]`` plus breakpoints.

    Pass ``explicit`` to scan a caller-supplied grid instead; it must still
    contain every breakpoint.
    """

    points: int = 1000
    rho_min: float = 1e-3
    rho_max_factor: float = 10.0
    explicit: Optional[Sequence[float]] = None


@dataclass(frozen=True)
class InfimumReport:
    n: int
    weight: str
    variant: str
    grid: np.ndarray = field(repr=False)
    breakpoints: tuple
    minimizer: mpmath.mpf
    minimum: mpmath.mpf
    floor: mpmath.mpf
    floor_label: str
    margin: mpmath.mpf
    passed: bool
    x_plus: mpmath.mpf
    minimizer_offset: mpmath.mpf  # |minimizer - x_plus| / x_plus


def _ratio_float(n, rho, weight, variant):
    p = (n + (1 if weight == "unit" else 2)) / n
    half_n = n / 2
    seg = (lambda a, b: b - a) if weight == "unit" else (lambda a, b: (b * b - a * a) / 2)
    total = seg(0.0, half_n) * rho
    root = math.sqrt(rho)
    if variant == "exact_count":
        k = 0
        while True:
            c = normalized_count(n, k + 1)
            if c >= rho:
                break
            a = half_n + k
            total += seg(a, a + 1) * (root - math.sqrt(c)) ** 2
            k += 1
    else:
        cutoff = rho ** (1 / n) - 0.5
        if cutoff > half_n:
            if weight == "unit":
                def f(E):
                    return (root - (E + 0.5) ** half_n) ** 2
            else:
                def f(E):
                    return E * (root - (E + 0.5) ** half_n) ** 2
            total += gauss_legendre_np_certified(f, half_n, cutoff)[0]
    return total / rho**p


def _required_breakpoints(n, variant, rho_max, crit):
    points = [float(gap_breakpoint(n)), float(crit.x_minus), float(crit.x_plus)]
    if variant == "exact_count":
        k = 1
        while True:
            c = normalized_count(n, k)
            if c > rho_max:
                break
            points.append(float(c))
            k += 1
    return sorted(p for p in set(points) if 0 < p <= rho_max)


def _golden(f, lo, hi, rel_tol):
    invphi = (mpmath.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    best = min((f(lo), lo), (f(hi), hi), (fc, c), (fd, d))
    while b - a > rel_tol * abs(b):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
            best = min(best, (fc, c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
            best = min(best, (fd, d))
    return best


def ratio_scan(n: int, weight: str = "unit", variant: str = "envelope",
               grid: GridSpec = GridSpec(), prec: int = 128) -> InfimumReport:
    """Scan the normalised ratio of :func:`integral_oracle` over a grid and refine the minimum.

    The grid is evaluated in double precision; the best cell is then refined
    by golden-section search on the ``prec``-bit oracle to a relative width of
    1e-10.  The scan passes when the minimum is at least the analytic floor
    minus 1e-9.  The floor is ``c_n`` for unit weight (1/3 for the exact S^2
    count) and ``c'_n`` for energy weight.
    """
    _check_n(n)
    _check_weight(weight)
    check_prec(prec)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    crit = critical_points(n, prec)

    if grid.explicit is not None:
        rho = np.unique(np.asarray(grid.explicit, dtype=float))
        if rho.size == 0 or rho[0] <= 0:
            raise ValueError("explicit grid must be non-empty and positive")
        rho_max = float(rho[-1])
    else:
        if grid.points < 1000:
            raise ValueError(f"grid needs at least 1000 points, got {grid.points}")
        if grid.rho_max_factor < 10:
            raise ValueError("grid must extend to at least 10 * x_plus")
        rho_max = grid.rho_max_factor * float(crit.x_plus)
        rho = np.geomspace(grid.rho_min, rho_max, grid.points)
    required = _required_breakpoints(n, variant, rho_max, crit)
    if grid.explicit is None:
        rho = np.unique(np.concatenate([rho, required]))
    missing = [b for b in required if not np.any(np.isclose(rho, b, rtol=1e-12, atol=0))]
    if missing:
        raise ValueError(f"grid misses breakpoints {missing}")

    values = np.array([_ratio_float(n, r, weight, variant) for r in rho])
    i = int(np.argmin(values))
    lo, hi = rho[max(i - 1, 0)], rho[min(i + 1, rho.size - 1)]

    with mpmath.workprec(prec + 16):
        def ratio(x):
            return integral_oracle(n, x, weight, variant, prec).ratio

        minimum, minimizer = _golden(ratio, mpmath.mpf(lo), mpmath.mpf(hi), mpmath.mpf("1e-10"))
        at_grid = ratio(mpmath.mpf(rho[i]))
        if at_grid < minimum:
            minimum, minimizer = at_grid, mpmath.mpf(rho[i])

        if weight == "energy":
            floor, label = mpq(c_prime(n)), "c_prime"
        elif variant == "exact_count" and n == 2:
            floor, label = mpmath.mpf(1) / 3, "one_third"
        else:
            floor, label = c_lower(n, prec), "c_n"
        margin = minimum - floor
        offset = abs(minimizer - crit.x_plus) / crit.x_plus
    return InfimumReport(
        n=n,
        weight=weight,
        variant=variant,
        grid=rho,
        breakpoints=tuple(required),
        minimizer=minimizer,
        minimum=minimum,
        floor=floor,
        floor_label=label,
        margin=margin,
        passed=bool(margin >= -SCAN_TOLERANCE),
        x_plus=crit.x_plus,
        minimizer_offset=offset,
    )
