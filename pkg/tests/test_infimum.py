from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diraclt.constants import c_lower, c_prime, dirac_lt_lower, dirac_sq_lt_lower
from diraclt.infimum import (
    GridSpec,
    a_coefficient,
    breakpoint_limits,
    critical_points,
    gap_breakpoint,
    i1_closed,
    i1_ratio,
    i1_ratio_derivative,
    integral_oracle,
    normalized_count,
    q_r_decomposition,
    ratio_scan,
    s2_closed_form,
    s2_envelope,
    theorem_constant,
)
from diraclt.constants import count_prefactor
from diraclt.spectrum import cumulative_count
from oracles import envelope_integral_mpquad, minimize_envelope_ratio



@pytest.fixture(autouse=True)
def _wide_context():
    # comparisons below are at 1e-60, so the ambient context must be wide too
    with mpmath.workprec(256):
        yield


def rel(a, b):
    return abs(a - b) / abs(b)


# -- integral oracle ------------------------------------------------------

def test_s2_exact_count_at_two():
    r = integral_oracle(2, 2, "unit", "exact_count")
    assert abs(r.value - 2) < 1e-60


@pytest.mark.parametrize("variant", ["exact_count", "envelope"])
def test_gap_only_regime(variant):
    r = integral_oracle(2, 0.5, "unit", variant)
    assert abs(r.value - mpmath.mpf("0.5")) < 1e-60
    assert r.branch == 0


def test_energy_envelope_n1_rho4():
    # 0.5 from the gap plus 59/60 above it; checked against tanh-sinh quadrature
    r = integral_oracle(1, 4, "energy", "envelope")
    assert abs(r.value - mpmath.mpf(89) / 60) < 1e-40
    assert abs(envelope_integral_mpquad(1, 4, "energy") - mpmath.mpf(89) / 60) < 1e-30
    assert r.error < 1e-10


@pytest.mark.parametrize("n, rho, weight", [
    (1, 7.3, "unit"), (3, 200.0, "unit"), (4, 5000.0, "energy"), (6, 2.0e5, "unit"), (2, 31.0, "energy"),
])
def test_envelope_matches_tanh_sinh(n, rho, weight):
    ours = integral_oracle(n, rho, weight, "envelope", prec=160).value
    ref = envelope_integral_mpquad(n, rho, weight, dps=40)
    assert rel(ours, ref) < 1e-25


def test_normalized_count_matches_spectrum():
    for n in range(1, 7):
        K = count_prefactor(n)
        for k in range(1, 15):
            E = Fraction(n, 2) + k - Fraction(1, 2)
            assert Fraction(cumulative_count(n, E)) / K == normalized_count(n, k)


def test_rejects_nonpositive_rho():
    with pytest.raises(ValueError):
        integral_oracle(2, 0)
    with pytest.raises(ValueError):
        s2_closed_form(-1)
    with pytest.raises(ValueError):
        integral_oracle(2, 1, variant="closed_form")


# -- S^2 closed form -----------------------------------------------------------

@pytest.mark.parametrize("rho, M, expected", [
    (2, 1, mpmath.mpf(2)),
    (0.5, 0, mpmath.mpf(0.5)),
])
def test_s2_closed_form_values(rho, M, expected):
    r = s2_closed_form(rho)
    assert r.branch == M
    assert abs(r.value - expected) < 1e-60


def test_s2_closed_form_rho6():
    with mpmath.workprec(256):
        expected = 14 - 4 * mpmath.sqrt(3)
    r = s2_closed_form(6)
    assert r.branch == 2 and abs(r.value - expected) < 1e-60


def test_s2_branch_boundaries():
    for M in range(60):
        assert s2_closed_form(M * M + M if M else 0.25).branch == M
        assert s2_closed_form((M + 1) * (M + 2) - 1e-9).branch == M


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e4, allow_nan=False))
def test_s2_closed_form_agrees_with_segments(rho):
    a = s2_closed_form(rho).value
    b = integral_oracle(2, rho, "unit", "exact_count").value
    assert rel(a, b) < 1e-10


def test_s2_envelope_values():
    left, right = s2_envelope(0)
    assert left == mpmath.inf
    assert abs(right - 3 / (6 * mpmath.sqrt(2))) < 1e-60
    assert abs(s2_envelope(1)[1] - 5 / (6 * mpmath.sqrt(6))) < 1e-60
    assert abs(s2_envelope(10**12)[1] - mpmath.mpf(1) / 3) < 1e-12


def test_s2_envelope_right_end_is_branch_minimum():
    # f(rho, M) = (M+1)/2 rho^(-1/2) (1 - M(M+2)/(3 rho)), sampled across the branch
    for M in range(1, 30):
        lo, hi = M * M + M, (M + 1) * (M + 2)
        rhos = np.linspace(lo, hi, 200)
        f = (M + 1) / 2 * rhos**-0.5 * (1 - M * (M + 2) / (3 * rhos))
        assert f.min() >= float(s2_envelope(M)[1]) - 1e-14


def test_s2_envelope_decreasing():
    rights = [s2_envelope(M, prec=128)[1] for M in range(0, 10**4 + 1, 1)]
    assert all(b < a for a, b in zip(rights, rights[1:]))


def test_s2_envelope_bounds_exact_ratio():
    for rho in np.geomspace(0.01, 5000, 300):
        r = integral_oracle(2, rho, "unit", "exact_count", prec=128)
        assert r.ratio >= s2_envelope(r.branch, prec=128)[1] - 1e-30


# -- closed forms above the gap -------------------------------------------------

@pytest.mark.parametrize("weight", ["unit", "energy"])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_i1_equals_envelope_integral(n, weight):
    x = float(gap_breakpoint(n)) * 3.7
    assert rel(i1_closed(n, x, weight, 160), envelope_integral_mpquad(n, x, weight)) < 1e-25


def test_i1_rejects_at_or_below_breakpoint():
    with pytest.raises(ValueError):
        i1_closed(2, Fraction(9, 4))
    with pytest.raises(ValueError):
        i1_closed(3, 1.0, "energy")


def test_i1_dominated_by_oracle_n2_rho10():
    r = integral_oracle(2, 10, "unit", "envelope")
    assert i1_closed(2, 10, "unit") <= r.value + r.error


@pytest.mark.parametrize("weight", ["unit", "energy"])
@pytest.mark.parametrize("n", range(1, 7))
def test_breakpoint_one_sided_limits_agree(n, weight):
    left, right = breakpoint_limits(n, weight)
    assert abs(left - right) < 1e-60 * abs(left)


def test_energy_ratio_at_s2_breakpoint():
    # the gap-only side gives n^2 / (2 (n+1)^2) = 2/9, which is q(2/3) + R(2/3)
    left, right = breakpoint_limits(2, "energy")
    q, R, _ = q_r_decomposition(2, Fraction(2, 3))
    assert abs(left - mpmath.mpf(2) / 9) < 1e-60
    assert abs(q + R - left) < 1e-60


def test_q_at_s2_boundary():
    q, R, y0 = q_r_decomposition(2, Fraction(2, 3))
    assert abs(q - mpmath.mpf(1) / 36) < 1e-60
    assert y0 == Fraction(2, 3)


def test_q_at_circle_minimizer():
    q, R, y0 = q_r_decomposition(1, Fraction(1, 3))
    assert y0 == Fraction(1, 3)
    assert abs(q - mpmath.mpf(7) / 360) < 1e-60
    # x = y^-n = 3 lies above the breakpoint 1; the full ratio sits above the floor
    assert i1_ratio(1, 3, "energy") >= mpmath.mpf(7) / 360


def test_remainder_positive_n3():
    for y in np.linspace(1e-4, 0.5, 400):
        assert q_r_decomposition(3, y)[1] > 0


@pytest.mark.parametrize("n", range(1, 9))
def test_q_plus_r_is_energy_ratio(n):
    for x in np.geomspace(float(gap_breakpoint(n)) * 1.01, float(gap_breakpoint(n)) * 1e4, 20):
        q, R, _ = q_r_decomposition(n, mpmath.mpf(x) ** (-mpmath.mpf(1) / n))
        assert rel(q + R, i1_ratio(n, x, "energy")) < 1e-50


@pytest.mark.parametrize("n", range(1, 21))
def test_q_floor_equals_c_prime(n):
    y0 = Fraction(2 * n * n, (n + 1) * (n + 2))
    edge = Fraction(2, n + 1)
    y = y0 if y0 < edge else edge
    assert abs(q_r_decomposition(n, y)[0] - mpmath.mpf(c_prime(n).numerator) / c_prime(n).denominator) < 1e-60


def test_a_coefficient_identity():
    # 2A - B (breakpoint)^(-1/2) reduces to a positive cubic over 4(n+4)
    for n in range(2, 30):
        with mpmath.workprec(256):
            h = mpmath.mpf(n + 1) / 2
            B = mpmath.mpf((n + 1) ** n * (n * n + n - 1)) / (2 ** (n + 2) * (n + 2))
            lhs = 2 * a_coefficient(n) - B * h ** (-mpmath.mpf(n) / 2)
            rhs = h ** (mpmath.mpf(n) / 2) / (n + 2) * (3 * n**3 + 7 * n * n - 3 * n - 4) / (4 * (n + 4))
        assert rel(lhs, rhs) < 1e-60 and rhs > 0


# -- critical points -------------------------------------------------------------

def test_critical_points_values():
    c2 = critical_points(2)
    assert abs(c2.x_plus - 66.818) < 1e-3
    assert abs(c2.x_minus - 0.68189) < 1e-5
    with mpmath.workprec(256):
        assert abs(critical_points(1).x_plus - 2 * (3 + 2 * mpmath.sqrt(2))) < 1e-60


@pytest.mark.parametrize("n", [1, 2, 3])
def test_x_plus_matches_numerical_minimizer(n):
    x, _ = minimize_envelope_ratio(n, 1.01 * float(gap_breakpoint(n)), 1e7)
    assert rel(x, float(critical_points(n).x_plus)) < 1e-5


@pytest.mark.parametrize("n", range(1, 21))
def test_quadratic_residual(n):
    c = critical_points(n)
    assert c.residual < 1e-12
    assert c.x_minus < mpmath.mpf(gap_breakpoint(n).numerator) / gap_breakpoint(n).denominator < c.x_plus


@pytest.mark.parametrize("n", range(1, 21))
def test_ratio_at_x_plus_is_c_n(n):
    assert rel(i1_ratio(n, critical_points(n).x_plus), c_lower(n)) < 1e-60


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_derivative_matches_finite_differences(n):
    with mpmath.workprec(256):
        bp = mpmath.mpf(gap_breakpoint(n).numerator) / gap_breakpoint(n).denominator
        for x in np.geomspace(float(bp) * 1.001, float(bp) * 1e5, 40):
            x = mpmath.mpf(x)
            h = x * mpmath.mpf(10) ** -25
            fd = (i1_ratio(n, x + h) - i1_ratio(n, x - h)) / (2 * h)
            exact = i1_ratio_derivative(n, x)
            assert abs(fd - exact) <= 1e-6 * abs(exact)


@pytest.mark.parametrize("n", range(1, 9))
def test_derivative_changes_sign_once_at_x_plus(n):
    xp = critical_points(n).x_plus
    bp = float(gap_breakpoint(n))
    grid = sorted(np.geomspace(bp * (1 + 1e-9), bp * 1e6, 2000).tolist() + [float(xp)])
    signs = [i1_ratio_derivative(n, x) > 0 for x in grid]
    flips = [i for i in range(1, len(signs)) if signs[i] != signs[i - 1]]
    assert len(flips) == 1
    assert grid[flips[0] - 1] <= float(xp) <= grid[flips[0]] * (1 + 1e-12)


# -- ratio scans and reconstruction of the constants ---------------------------

@pytest.mark.parametrize("n", range(1, 9))
def test_theorem_constants_from_floors(n):
    assert rel(theorem_constant(n, c_lower(n), "unit"), dirac_lt_lower(n)) < 1e-60
    assert rel(theorem_constant(n, c_prime(n), "energy"), dirac_sq_lt_lower(n)) < 1e-60


def test_scan_s2_energy_above_c_prime():
    r = ratio_scan(2, "energy")
    assert r.passed and r.floor_label == "c_prime"
    assert r.minimum >= mpmath.mpf(1) / 36


def test_scan_n3_unit_minimizer_near_x_plus():
    r = ratio_scan(3, "unit")
    assert r.passed
    assert rel(r.minimum, c_lower(3)) < 1e-20
    assert r.minimizer_offset < 1e-6


def test_scan_exact_count_general_n_above_envelope_floor():
    r = ratio_scan(3, "unit", "exact_count")
    assert r.passed and r.minimum > c_lower(3)


def test_scan_grid_contains_breakpoints():
    r = ratio_scan(2, "unit", "exact_count")
    for m in range(1, 26):
        assert np.any(np.isclose(r.grid, m * m + m, rtol=1e-12, atol=0))
    assert r.grid[-1] >= 10 * float(r.x_plus) * (1 - 1e-12)


def test_scan_rejects_grid_missing_breakpoint():
    grid = np.geomspace(1e-3, 700, 1500)
    with pytest.raises(ValueError, match="misses breakpoints"):
        ratio_scan(2, "unit", "exact_count", GridSpec(explicit=grid))


def test_scan_accepts_complete_explicit_grid():
    c = critical_points(1)
    grid = np.concatenate([np.geomspace(1e-2, 120, 1200), [1.0, float(c.x_minus), float(c.x_plus)]])
    r = ratio_scan(1, "unit", "envelope", GridSpec(explicit=grid))
    assert r.passed and r.minimizer_offset < 1e-6


def test_scan_rejects_coarse_grid():
    with pytest.raises(ValueError):
        ratio_scan(2, grid=GridSpec(points=100))
    with pytest.raises(ValueError):
        ratio_scan(2, grid=GridSpec(rho_max_factor=2))


# -- dominance properties ----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), t=st.floats(0.0, 1.0))
def test_exact_count_dominates_envelope(n, t):
    hi = 12 * float(gap_breakpoint(n))
    rho = 1e-2 * (hi / 1e-2) ** t
    for weight in ("unit", "energy"):
        exact = integral_oracle(n, rho, weight, "exact_count", prec=96)
        env = integral_oracle(n, rho, weight, "envelope", prec=96)
        assert exact.value >= env.value - env.error


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), t=st.floats(0.0, 1.0))
def test_i1_below_envelope_oracle(n, t):
    bp = float(gap_breakpoint(n))
    rho = bp * (1 + 1e-6) * 30**t
    for weight in ("unit", "energy"):
        env = integral_oracle(n, rho, weight, "envelope", prec=96)
        # equal in exact arithmetic above the breakpoint; allow 96-bit roundoff
        assert i1_closed(n, rho, weight, 96) <= env.value * (1 + mpmath.mpf(2) ** -80) + env.error
