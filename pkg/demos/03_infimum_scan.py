"""
Where the integral ratio bottoms out
====================================

The lower bounds come from minimizing a ratio of a spectral integral to a
power of the density.  Above the gap the minimum has a closed form at the
larger critical point x_plus; a grid scan confirms it.
"""
from diraclt.constants import c_lower, c_prime
from diraclt.infimum import critical_points, ratio_scan

for n in range(1, 5):
    crit = critical_points(n)
    scan = ratio_scan(n, "unit")
    print(f"n={n}: x_plus={float(crit.x_plus):.6g}  scan min={float(scan.minimum):.10f}  "
          f"c_n={float(c_lower(n)):.10f}  offset={float(scan.minimizer_offset):.1e}")

# with the energy weight the scan stays above c'_n with room to spare
for n in range(1, 5):
    scan = ratio_scan(n, "energy")
    print(f"n={n}: energy min={float(scan.minimum):.6f}  c'_n={float(c_prime(n)):.6f}")

# on S^2 the true step count gives 1/3, sharper than the envelope's c_2
s2 = ratio_scan(2, "unit", "exact_count")
print("S^2 exact count:", float(s2.minimum), "vs c_2 =", float(c_lower(2)))
